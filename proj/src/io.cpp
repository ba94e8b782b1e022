#include "wha/io.hpp"

namespace wha::io {

namespace {

double clean(double x) { return std::abs(x) < 1e-14 ? 0.0 : x; }

const Json& field(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
    return j.at(key);
}

const Json& array_of(const Json& j, size_t size, const std::string& where)
{
    if (!j.is_array()) throw InputError(where + ": expected an array");
    if (j.size() != size)
        throw InputError(where + ": expected " + std::to_string(size) + " entries, found " + std::to_string(j.size()));
    return j;
}

int int_from(const Json& j, const std::string& where)
{
    if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
    return j.get<int>();
}

Mat matrix_rows(const Json& j, int rows, int cols, const std::string& where)
{
    array_of(j, rows, where);
    Mat m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const std::string at = where + "[" + std::to_string(r) + "]";
        array_of(j[r], cols, at);
        for (int c = 0; c < cols; ++c) m(r, c) = complex_from(j[r][c], at + "[" + std::to_string(c) + "]");
    }
    return m;
}

std::vector<std::vector<cx>> complex_table(const Json& j, const std::string& where)
{
    if (!j.is_array()) throw InputError(where + ": expected an array");
    std::vector<std::vector<cx>> out;
    for (size_t r = 0; r < j.size(); ++r) {
        const std::string at = where + "[" + std::to_string(r) + "]";
        if (!j[r].is_array()) throw InputError(at + ": expected an array");
        std::vector<cx> row;
        for (size_t c = 0; c < j[r].size(); ++c) row.push_back(complex_from(j[r][c], at + "[" + std::to_string(c) + "]"));
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace

Json to_json(cx z) { return Json::array({clean(z.real()), clean(z.imag())}); }

Json to_json(const Vec& v)
{
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v[i]));
    return out;
}

Json to_json(const Mat& m)
{
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(to_json(Vec(m.row(r).transpose())));
    return out;
}

Json to_json(const Report& r)
{
    Json checks = Json::array();
    for (const auto& e : r.entries) checks.push_back({{"name", e.name}, {"residual", e.residual}, {"pass", e.pass}});
    return {{"ok", r.ok()}, {"checks", checks}};
}

cx complex_from(const Json& j, const std::string& where)
{
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InputError(where + ": expected a number or an [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

Vec vector_from(const Json& j, int expected, const std::string& where)
{
    array_of(j, expected, where);
    Vec v(expected);
    for (int i = 0; i < expected; ++i) v[i] = complex_from(j[i], where + "[" + std::to_string(i) + "]");
    return v;
}

Json star_algebra_json(const StarAlgebra& a)
{
    const int n = a.dim();
    Json mult = Json::array();
    for (int i = 0; i < n; ++i) {
        Json row = Json::array();
        for (int j = 0; j < n; ++j) row.push_back(to_json(Vec(a.left_basis(i).col(j))));
        mult.push_back(row);
    }
    return {{"dim", n},
            {"labels", a.labels()},
            {"mult", mult},
            {"unit", to_json(a.unit())},
            {"star", to_json(Mat(a.star_matrix().transpose()))}};
}

StarAlgebra star_algebra_from_json(const Json& j, bool check_cstar)
{
    const int n = int_from(field(j, "dim", "algebra"), "algebra.dim");
    if (n <= 0) throw InputError("algebra.dim: must be positive");
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        const Json& l = array_of(j.at("labels"), n, "algebra.labels");
        for (const auto& s : l) {
            if (!s.is_string()) throw InputError("algebra.labels: expected strings");
            labels.push_back(s.get<std::string>());
        }
    }
    const Json& mult = array_of(field(j, "mult", "algebra"), n, "algebra.mult");
    std::vector<std::vector<std::vector<cx>>> mu(n);
    for (int i = 0; i < n; ++i) {
        const std::string at = "algebra.mult[" + std::to_string(i) + "]";
        array_of(mult[i], n, at);
        for (int k = 0; k < n; ++k) {
            const Vec v = vector_from(mult[i][k], n, at + "[" + std::to_string(k) + "]");
            mu[i].emplace_back(v.data(), v.data() + n);
        }
    }
    const Vec unit = vector_from(field(j, "unit", "algebra"), n, "algebra.unit");
    const Mat star = matrix_rows(field(j, "star", "algebra"), n, n, "algebra.star");
    std::vector<std::vector<cx>> st(n, std::vector<cx>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) st[i][k] = star(i, k);
    return star_algebra_from_tables(n, std::move(labels), mu, std::vector<cx>(unit.data(), unit.data() + n), st,
                                    check_cstar);
}

Json weak_hopf_json(const WeakHopf& w)
{
    Json out = star_algebra_json(w.alg());
    out["coproduct"] = to_json(Mat(w.coproduct().transpose()));
    out["counit"] = to_json(w.counit());
    out["antipode"] = to_json(Mat(w.antipode().transpose()));
    return out;
}

WeakHopf weak_hopf_from_json(const Json& j)
{
    StarAlgebra a = star_algebra_from_json(j);
    const int n = a.dim();
    const Mat cop = matrix_rows(field(j, "coproduct", "hopf"), n, n * n, "hopf.coproduct");
    const Vec counit = vector_from(field(j, "counit", "hopf"), n, "hopf.counit");
    const Mat antipode = matrix_rows(field(j, "antipode", "hopf"), n, n, "hopf.antipode");
    return WeakHopf(std::move(a), cop.transpose(), counit, antipode.transpose());
}

Json module_json(const ModuleAlgebra& ma)
{
    Json action = Json::array();
    for (const Mat& m : ma.action_basis()) action.push_back(to_json(Mat(m.transpose())));
    return {{"hopf", weak_hopf_json(ma.hopf())}, {"algebra", star_algebra_json(ma.target())}, {"action", action}};
}

ModuleAlgebra module_from_json(const Json& j)
{
    WeakHopf w = weak_hopf_from_json(field(j, "hopf", "module"));
    StarAlgebra m = star_algebra_from_json(field(j, "algebra", "module"));
    const Json& act = array_of(field(j, "action", "module"), w.dim(), "module.action");
    std::vector<Mat> mats;
    for (int i = 0; i < w.dim(); ++i)
        mats.push_back(matrix_rows(act[i], m.dim(), m.dim(), "module.action[" + std::to_string(i) + "]").transpose());
    return ModuleAlgebra(std::move(w), std::move(m), std::move(mats));
}

Json group_json(const FiniteGroup& g)
{
    Json out = {{"order", g.order}, {"mult", g.mult}};
    if (!g.names.empty()) out["names"] = g.names;
    return out;
}

FiniteGroup group_from_json(const Json& j)
{
    const int n = int_from(field(j, "order", "group"), "group.order");
    if (n <= 0) throw InputError("group.order: must be positive");
    const Json& mult = array_of(field(j, "mult", "group"), n, "group.mult");
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a) {
        const std::string at = "group.mult[" + std::to_string(a) + "]";
        array_of(mult[a], n, at);
        for (int b = 0; b < n; ++b) table[a][b] = int_from(mult[a][b], at + "[" + std::to_string(b) + "]");
    }
    std::vector<std::string> names;
    if (j.contains("names"))
        for (const auto& s : array_of(j.at("names"), n, "group.names")) {
            if (!s.is_string()) throw InputError("group.names: expected strings");
            names.push_back(s.get<std::string>());
        }
    return make_group(table, std::move(names));
}

Cocycle cocycle_from_json(const Json& j)
{
    Cocycle cc;
    cc.z = complex_table(field(j, "z", "cocycle"), "cocycle.z");
    cc.c = complex_table(field(j, "c", "cocycle"), "cocycle.c");
    return cc;
}

Json cocycle_json(const Cocycle& cc)
{
    auto table = [](const std::vector<std::vector<cx>>& t) {
        Json out = Json::array();
        for (const auto& row : t) {
            Json r = Json::array();
            for (cx z : row) r.push_back(to_json(z));
            out.push_back(r);
        }
        return out;
    };
    return {{"z", table(cc.z)}, {"c", table(cc.c)}};
}

std::string record_kind(const Json& j)
{
    if (!j.is_object()) throw InputError("document: expected a JSON object");
    if (j.contains("action")) return "module";
    if (j.contains("coproduct")) return "weak_hopf";
    if (j.contains("mult") && j.contains("dim")) return "star_algebra";
    throw InputError("document: not a star algebra, weak Hopf algebra or module algebra record");
}

}  // namespace wha::io
