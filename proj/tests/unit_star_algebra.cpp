#include "test_support.hpp"

using namespace wha;
using namespace wha::test;

namespace {

StarAlgebra cz2() { return group_algebra(cyclic_group(2).mult, {"e", "g"}); }

Vec cz2_element(cx e, cx g)
{
    Vec v(2);
    v << e, g;
    return v;
}

std::string kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const MathError& e) {
        return e.kind();
    }
    return "";
}

}  // namespace

TEST_CASE("matrix units multiply like matrices")
{
    const StarAlgebra m = matrix_algebra(2);
    REQUIRE(m.dim() == 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Mat product = coords_matrix(m.basis(i), 2) * coords_matrix(m.basis(j), 2);
            CHECK(inf_norm(Vec(m.mul(m.basis(i), m.basis(j)) - matrix_coords(product))) < 1e-14);
        }
    for (int i = 0; i < 4; ++i)
        CHECK(inf_norm(Vec(m.star(m.basis(i)) - matrix_coords(coords_matrix(m.basis(i), 2).adjoint()))) < 1e-14);
    CHECK(m.certified_cstar());
}

TEST_CASE("left regular representation is multiplicative on random elements")
{
    const StarAlgebra m = matrix_algebra(3);
    for (unsigned seed = 1; seed <= 5; ++seed) {
        const Vec a = random_vector(m.dim(), seed), b = random_vector(m.dim(), seed + 100);
        CHECK(inf_norm(Mat(m.L(a) * m.L(b) - m.L(m.mul(a, b)))) < 1e-12);
        CHECK(inf_norm(Mat(m.R(a) * m.R(b) - m.R(m.mul(b, a)))) < 1e-12);
        CHECK(inf_norm(Vec(m.star(m.mul(a, b)) - m.mul(m.star(b), m.star(a)))) < 1e-12);
    }
}

TEST_CASE("broken structure constants are rejected with the failing law")
{
    const StarAlgebra m2 = matrix_algebra(2);
    std::vector<Mat> left;
    for (int i = 0; i < 4; ++i) left.push_back(m2.left_basis(i));
    left[1](0, 2) = 0.0;  // E12 E21 = 0 instead of E11
    CHECK(kind_of([&] { make_star_algebra(4, {}, left, m2.unit(), m2.star_matrix()); }) == "AssociativityViolation");

    const StarAlgebra m = cz2();
    Mat bad_star = m.star_matrix();
    bad_star(1, 1) = cx(0, 1);
    CHECK(kind_of([&] {
              make_star_algebra(2, {"e", "g"}, {m.left_basis(0), m.left_basis(1)}, m.unit(), bad_star);
          }) == "StarViolation");

    std::vector<Mat> nilpotent{m.left_basis(0), m.left_basis(1)};
    nilpotent[1] = Mat::Zero(2, 2);
    nilpotent[1](1, 0) = 1.0;
    CHECK(kind_of([&] { make_star_algebra(2, {"e", "g"}, nilpotent, m.unit(), m.star_matrix()); }) == "NotCStar");
}

TEST_CASE("positivity in CZ2 follows the character values")
{
    const StarAlgebra a = cz2();
    CHECK(is_positive(a, cz2_element(1, -1)));
    CHECK_FALSE(is_positive(a, cz2_element(1, -3)));
    CHECK(is_self_adjoint(a, cz2_element(1, -3), 1e-12));
    CHECK_FALSE(is_self_adjoint(a, cz2_element(1, cx(0, 1)), 1e-12));
}

TEST_CASE("square root in CZ2 matches the character computation")
{
    const StarAlgebra a = cz2();
    const Vec x = cz2_element(1.25, 0.75);  // characters 2 and 1/2
    const double plus = std::sqrt(2.0), minus = std::sqrt(0.5);
    const Vec expected = cz2_element((plus + minus) / 2, (plus - minus) / 2);
    const Vec r = sqrt_positive(a, x);
    CHECK(inf_norm(Vec(r - expected)) < 1e-12);
    CHECK(inf_norm(Vec(a.mul(r, r) - x)) < 1e-12);
    CHECK(kind_of([&] { sqrt_positive(a, cz2_element(1, -3)); }) == "NotPositive");
}

TEST_CASE("inverses of scalars and singular elements")
{
    const StarAlgebra a = cz2();
    CHECK(inf_norm(Vec(invert(a, a.unit()) - a.unit())) < 1e-14);
    CHECK(inf_norm(Vec(invert(a, Vec(2.0 * a.unit())) - 0.5 * a.unit())) < 1e-14);
    CHECK_FALSE(is_invertible(a, cz2_element(1, 1)));
    CHECK(kind_of([&] { invert(a, cz2_element(1, 1)); }) == "Singular");
}

TEST_CASE("commutant of the diagonal matrices is the diagonal")
{
    const StarAlgebra m = matrix_algebra(2);
    Mat diag(4, 2);
    diag << 1, 0, 0, 0, 0, 0, 0, 1;
    const Subspace c = commutant(diag, m);
    CHECK(c.dim() == 2);
    CHECK(c.equals(Subspace::span(diag, 1e-12), 1e-10));
    CHECK(center(m).dim() == 1);
    CHECK(center(cz2()).dim() == 2);
    CHECK(center(group_algebra(symmetric_group3().mult, {})).dim() == 3);
}

TEST_CASE("generated algebras and subalgebra restriction")
{
    const StarAlgebra m = matrix_algebra(2);
    const Vec sx = matrix_coords(pauli_x());
    const Subspace gen = generated_algebra(m, Mat(sx));
    CHECK(gen.dim() == 2);
    CHECK(is_unital_star_subalgebra(m, gen, 1e-10));
    const StarAlgebra sub = restrict_to(m, gen, "s");
    CHECK(sub.dim() == 2);
    CHECK(center(sub).dim() == 2);
    Mat both(4, 2);
    both << sx, matrix_coords(pauli_z());
    CHECK(generated_algebra(m, both).dim() == 4);
}

TEST_CASE("linear solver handles consistent and inconsistent systems")
{
    const Mat id = Mat::Identity(3, 3);
    CHECK(null_space(Mat::Zero(1, 3), 1e-12).cols() == 3);
    CHECK(numerical_rank(id, 1e-12) == 3);

    Mat contradictory(2, 1);
    contradictory << 1, 1;
    Vec rhs(2);
    rhs << 0, 1;
    CHECK(kind_of([&] { solve_linear(contradictory, rhs, 1e-9); }) == "NoSolution");

    const Mat sys = to_matrix(random_vector(36, 7), 6, 6);
    const Vec b = random_vector(6, 8);
    const LinearSolution s = solve_linear(sys, b, 1e-9);
    CHECK(inf_norm(Vec(sys * s.particular - b)) < 1e-12);
    CHECK(s.kernel.cols() == 0);
}

TEST_CASE("subspace lattice operations")
{
    Mat a(3, 2), b(3, 2);
    a << 1, 0, 0, 1, 0, 0;
    b << 0, 0, 1, 0, 0, 1;
    const Subspace x = Subspace::span(a, 1e-12), y = Subspace::span(b, 1e-12);
    CHECK(x.intersect(y, 1e-10).dim() == 1);
    CHECK(x.sum(y, 1e-10).dim() == 3);
    CHECK(x.contains(unit_vector(3, 1), 1e-12));
    CHECK_FALSE(x.contains(unit_vector(3, 2), 1e-12));
}
