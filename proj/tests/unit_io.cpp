#include "test_support.hpp"
#include "wha/io.hpp"

using namespace wha;
using namespace wha::test;

TEST_CASE("weak Hopf records survive a JSON round trip")
{
    const PauliData p = pauli_data();
    for (const WeakHopf& w : {group_weak_hopf(symmetric_group3(), {symmetric_group3().identity}),
                              twisted_group_weak_hopf(p.group, p.subgroup, p.cocycle)}) {
        const io::Json j = io::Json::parse(io::weak_hopf_json(w).dump());
        CHECK(io::record_kind(j) == "weak_hopf");
        const WeakHopf back = io::weak_hopf_from_json(j);
        CHECK(inf_norm(Mat(back.alg().flat() - w.alg().flat())) < 1e-14);
        CHECK(inf_norm(Mat(back.coproduct() - w.coproduct())) < 1e-14);
        CHECK(inf_norm(Mat(back.antipode() - w.antipode())) < 1e-14);
        CHECK(inf_norm(Vec(back.counit() - w.counit())) < 1e-14);
        CHECK(inf_norm(Mat(back.alg().star_matrix() - w.alg().star_matrix())) < 1e-14);
    }
}

TEST_CASE("module records survive a JSON round trip")
{
    const ModuleAlgebra ma = diagonal_sign_action();
    const io::Json j = io::module_json(ma);
    CHECK(io::record_kind(j) == "module");
    const ModuleAlgebra back = io::module_from_json(j);
    for (size_t i = 0; i < ma.action_basis().size(); ++i)
        CHECK(inf_norm(Mat(back.action_basis()[i] - ma.action_basis()[i])) < 1e-14);
    WHA_CHECK_REPORT(verify_module_axioms(back));
}

TEST_CASE("action entries follow the documented index order")
{
    const ModuleAlgebra ma = diagonal_sign_action();
    const io::Json j = io::module_json(ma);
    for (int i = 0; i < ma.hopf().dim(); ++i)
        for (int p = 0; p < ma.dim(); ++p) {
            const Vec image = ma.act(unit_vector(ma.hopf().dim(), i), unit_vector(ma.dim(), p));
            for (int q = 0; q < ma.dim(); ++q)
                CHECK(std::abs(io::complex_from(j["action"][i][p][q], "") - image[q]) < 1e-14);
        }
}

TEST_CASE("group and cocycle records")
{
    const PauliData p = pauli_data();
    const FiniteGroup back = io::group_from_json(io::group_json(p.group));
    CHECK(back.mult == p.group.mult);
    const Cocycle cc = io::cocycle_from_json(io::cocycle_json(p.cocycle));
    CHECK(check_cocycle(p.group, p.subgroup, cc).ok());
}

TEST_CASE("malformed records name the offending location")
{
    io::Json j = io::weak_hopf_json(group_hopf(cyclic_group(2)));
    j["counit"] = io::Json::array({1});
    try {
        io::weak_hopf_from_json(j);
        FAIL("expected an input error");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("hopf.counit") != std::string::npos);
    }
    CHECK_THROWS_AS(io::complex_from(io::Json("x"), "z"), InputError);
    CHECK_THROWS_AS(io::record_kind(io::Json::array()), InputError);
    CHECK_THROWS_AS(io::group_from_json(io::Json{{"order", 2}, {"mult", {{0, 1}, {1, 1}}}}), InputError);
}

TEST_CASE("reports serialize every entry")
{
    Report r;
    r.add("small", 1e-12, 1e-9);
    r.flag("broken", false);
    const io::Json j = io::to_json(r);
    CHECK(j["ok"] == false);
    REQUIRE(j["checks"].size() == 2);
    CHECK(j["checks"][1]["name"] == "broken");
    CHECK(j["checks"][0]["pass"] == true);
}
