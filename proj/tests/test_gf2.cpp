#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "ptower/gf2.hpp"
#include "ptower/graded.hpp"
#include "ptower/presentation.hpp"

using namespace ptower;

namespace {

// The 4x5 matrix joining the degree-1 boundary lift with the degree-0
// relations of the double-diamond example.
gf2::matrix kernel_example() {
    gf2::matrix m(4, 5);
    m.set_col(0, {0, 1});
    m.set_col(1, {0, 2});
    m.set_col(2, {1, 3});
    m.set_col(3, {2, 3});
    m.set_col(4, {2, 3});
    return m;
}

gf2::matrix random_matrix(std::mt19937_64& rng, uint32_t rows, uint32_t cols, double density = 0.35) {
    gf2::matrix m(rows, cols);
    for (uint32_t j = 0; j < cols; ++j) {
        gf2::index_list col;
        for (uint32_t i = 0; i < rows; ++i)
            if (rng() % 100 < density * 100) col.push_back(i);
        m.set_col(j, std::move(col));
    }
    return m;
}

}  // namespace

TEST(Gf2, XorCols) {
    EXPECT_EQ(gf2::xor_cols({0, 2, 5}, {2, 3}), (gf2::index_list{0, 3, 5}));
    EXPECT_EQ(gf2::xor_cols({}, {1}), (gf2::index_list{1}));
    EXPECT_EQ(gf2::xor_cols({1}, {1}), (gf2::index_list{}));
}

TEST(Gf2, ColumnReduceEqualColumns) {
    gf2::matrix m(2, 2);
    m.set_col(0, {0, 1});
    m.set_col(1, {0, 1});
    auto r = gf2::column_reduce(m);
    EXPECT_EQ(r.zeroed_cols, (std::vector<uint32_t>{1}));
    EXPECT_TRUE(r.reduced.col(1).empty());
    EXPECT_EQ(r.rank, 1u);
}

TEST(Gf2, ColumnReduceIdentity) {
    gf2::matrix id = gf2::matrix::identity(4);
    auto r = gf2::column_reduce(id);
    EXPECT_TRUE(r.zeroed_cols.empty());
    EXPECT_EQ(r.reduced, id);
}

// The two relation-of-relation columns of the double-diamond example are
// equal, so plain reduction zeroes the second one.
TEST(Gf2, ColumnReduceRelRelPair) {
    auto tb = fixtures::fig10();
    presentation_options opts;
    opts.relrel = true;
    chain_presentation cp = run_presentation(tb.tower, opts);
    graded_matrix p2 = cp.relrel_matrix(0);
    ASSERT_EQ(p2.cols(), 2u);
    auto r = gf2::column_reduce(p2.entries());
    EXPECT_EQ(r.zeroed_cols, (std::vector<uint32_t>{1}));
}

TEST(Gf2, KernelExampleRankAndKernel) {
    gf2::matrix m = kernel_example();
    EXPECT_EQ(gf2::rank(m), 3u);
    EXPECT_EQ(gf2::kernel_basis(m).cols(), 2u);
    // kernel vectors actually lie in the kernel
    gf2::matrix kb = gf2::kernel_basis(m);
    for (uint32_t j = 0; j < kb.cols(); ++j) {
        gf2::index_list image;
        for (uint32_t k : kb.col(j)) image = gf2::xor_cols(image, m.col(k));
        EXPECT_TRUE(image.empty());
    }
}

TEST(Gf2, SolveIdentityAndNoSolution) {
    gf2::matrix id = gf2::matrix::identity(3);
    auto x = gf2::solve(id, {0, 2});
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(*x, (gf2::index_list{0, 2}));

    gf2::matrix m(2, 1);
    m.set_col(0, {0});
    EXPECT_FALSE(gf2::solve(m, {1}).has_value());
}

TEST(Gf2, SolveRandomAgainstMultiplyBack) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        gf2::matrix m = random_matrix(rng, 8, 10);
        // draw b from the image so a solution must exist
        gf2::index_list b;
        for (uint32_t j = 0; j < m.cols(); ++j)
            if (rng() % 2) b = gf2::xor_cols(b, m.col(j));
        auto x = gf2::solve(m, b);
        ASSERT_TRUE(x.has_value());
        gf2::index_list back;
        for (uint32_t k : *x) back = gf2::xor_cols(back, m.col(k));
        EXPECT_EQ(back, b);
    }
}

// Left-to-right reduction only adds earlier columns to later ones, so every
// column prefix spans the same space before and after.
TEST(Gf2, ColumnReducePreservesPrefixSpans) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 30; ++t) {
        gf2::matrix m = random_matrix(rng, 7, 9);
        auto r = gf2::column_reduce(m);
        for (uint32_t k = 1; k <= m.cols(); ++k) {
            gf2::matrix orig(m.rows(), 0), red(m.rows(), 0), both(m.rows(), 0);
            for (uint32_t j = 0; j < k; ++j) {
                orig.add_col(m.col(j));
                red.add_col(r.reduced.col(j));
                both.add_col(m.col(j));
            }
            for (uint32_t j = 0; j < k; ++j) both.add_col(r.reduced.col(j));
            uint32_t ro = gf2::rank(orig);
            EXPECT_EQ(ro, gf2::rank(red));
            EXPECT_EQ(ro, gf2::rank(both));
        }
    }
}

TEST(Graded, GradingValidityEnforced) {
    poset p({"x0", "x1"}, {{"x0", "x1"}});
    gf2::matrix ok(1, 1);
    ok.set_col(0, {0});
    // row at x0, column at x1: fine
    graded_matrix good(&p, {{"a", 0}}, {{"b", 1}}, ok);
    EXPECT_EQ(good.cols(), 1u);
    // row at x1, column at x0: forbidden
    gf2::matrix bad(1, 1);
    bad.set_col(0, {0});
    EXPECT_THROW(graded_matrix(&p, {{"a", 1}}, {{"b", 0}}, bad), grading_error);
}

TEST(Graded, DuplicateLabelsRejected) {
    poset p({"x0"}, {});
    gf2::matrix m(2, 0);
    EXPECT_THROW(graded_matrix(&p, {{"a", 0}, {"a", 0}}, {}, m), grading_error);
}

TEST(Graded, RestrictAtFig10) {
    auto tb = fixtures::fig10();
    chain_presentation cp = run_presentation(tb.tower);
    graded_matrix p1 = cp.presentation_matrix(0);
    const poset& p = *tb.base;

    auto at_x2 = p1.restrict_at(p.id_of("x2"));
    EXPECT_EQ(at_x2.m.cols(), 0u);  // no relation grade below x3/x4

    auto at_x3 = p1.restrict_at(p.id_of("x3"));
    ASSERT_EQ(at_x3.m.cols(), 1u);
    EXPECT_EQ(at_x3.m.rows(), 4u);
    EXPECT_EQ(at_x3.m.col(0), (gf2::index_list{2, 3}));  // the two copies of v

    // below all labels: empty matrix
    poset solo({"y"}, {});
    graded_matrix empty_m(&solo, {}, {}, gf2::matrix(0, 0));
    auto r = empty_m.restrict_at(0);
    EXPECT_EQ(r.m.rows(), 0u);
    EXPECT_EQ(r.m.cols(), 0u);
}

// Restriction is functorial: restricting at y and then keeping only the
// labels alive at x <= y gives the restriction at x.
TEST(Graded, RestrictAtFunctorial) {
    auto tb = fixtures::fig10();
    chain_presentation cp = run_presentation(tb.tower);
    graded_matrix m = cp.boundary_matrix(1);
    const poset& p = *tb.base;
    for (grade_id x = 0; x < p.node_count(); ++x)
        for (grade_id y = 0; y < p.node_count(); ++y) {
            if (!p.leq(x, y)) continue;
            auto rx = m.restrict_at(x);
            auto ry = m.restrict_at(y);
            // positions of x-alive labels inside the y-restriction
            std::map<uint32_t, uint32_t> row_pos;
            for (uint32_t i = 0; i < ry.row_ids.size(); ++i) row_pos[ry.row_ids[i]] = i;
            for (uint32_t j = 0; j < rx.col_ids.size(); ++j) {
                uint32_t jy = UINT32_MAX;
                for (uint32_t k = 0; k < ry.col_ids.size(); ++k)
                    if (ry.col_ids[k] == rx.col_ids[j]) jy = k;
                ASSERT_NE(jy, UINT32_MAX);
                gf2::index_list expect;
                for (uint32_t i : rx.m.col(j)) expect.push_back(row_pos.at(rx.row_ids[i]));
                EXPECT_EQ(ry.m.col(jy), expect);
            }
        }
}

TEST(Graded, MultiplyFig10) {
    auto tb = fixtures::fig10();
    chain_presentation cp = run_presentation(tb.tower);
    // boundary of degree 1 composed with the (empty) degree-1 relations
    graded_matrix f1p1 = multiply(cp.boundary_matrix(1), cp.presentation_matrix(1));
    EXPECT_EQ(f1p1.cols(), 0u);

    // boundary of the triangle lands on the two copies of v
    graded_matrix f1f2 = multiply(cp.boundary_matrix(1), cp.boundary_matrix(2));
    ASSERT_EQ(f1f2.cols(), 1u);
    EXPECT_EQ(f1f2.entries().col(0), (gf2::index_list{2, 3}));
    EXPECT_EQ(f1f2.row_labels()[2].name, "g:v");
    EXPECT_EQ(f1f2.row_labels()[3].name, "g:v");

    // identity-labelled product is the identity
    graded_matrix p1 = cp.presentation_matrix(0);
    gf2::matrix id = gf2::matrix::identity(p1.cols());
    graded_matrix gid(tb.base.get(), p1.col_labels(), p1.col_labels(), id);
    EXPECT_EQ(multiply(p1, gid), p1);

    EXPECT_THROW(multiply(cp.boundary_matrix(1), cp.boundary_matrix(1)), dimension_mismatch);
}
