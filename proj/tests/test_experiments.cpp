#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "kellyfreq/experiments.hpp"

using namespace kellyfreq;

TEST_CASE("sweep matches the closed form at every n") {
    const std::vector<SweepRow> rows = frequency_sweep(ReturnPmf::bernoulli(0.7, 1.0), 10);
    REQUIRE(rows.size() == 10);
    for (const SweepRow& row : rows) {
        const OptResult closed = bernoulli_closed_form(0.7, row.n);
        CHECK(std::abs(row.g_star - closed.g_star) <= 1e-10);
        CHECK(std::abs(row.k_star - closed.k_star) <= 1e-8);
        CHECK_FALSE(row.merged);
    }
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        CHECK(rows[i].g_star >= rows[i + 1].g_star);
}

TEST_CASE("first sweep row is the single-period optimum") {
    const std::vector<SweepRow> rows = frequency_sweep(ReturnPmf::bernoulli(0.6, 1.0), 3);
    CHECK(rows[0].n == 1);
    CHECK(std::abs(rows[0].k_star - 0.2) <= 1e-9);
    CHECK(rows[0].g_star == doctest::Approx(0.020136).epsilon(1e-4));
    CHECK(rows[0].e_star == 0.0);
}

TEST_CASE("attractive distribution sweeps flat at the cap") {
    // theta = 0.2/0.5 + 0.8/1.5 = 14/15 < 1.
    const std::vector<SweepRow> rows = frequency_sweep(ReturnPmf::bernoulli(0.8, 0.5), 10);
    for (const SweepRow& row : rows) {
        CHECK(row.k_star == 1.0);
        CHECK(std::abs(row.e_star) <= 1e-9);
        CHECK(row.theta == doctest::Approx(14.0 / 15.0).epsilon(1e-14));
    }
}

TEST_CASE("monotonicity scan is clean for even-money and attractive gambles") {
    CHECK_FALSE(conjecture1_scan(ReturnPmf::bernoulli(0.8, 1.0), 10).violated);

    const Conjecture1Report rep = conjecture1_scan(ReturnPmf::bernoulli(0.8, 0.5), 10);
    CHECK_FALSE(rep.violated);
    for (const SweepRow& row : rep.rows) CHECK(std::abs(row.e_star) <= 1e-9);
}

TEST_CASE("arbitrage distribution is flat across frequencies") {
    const ReturnPmf arb({{0.2, 0.5}, {0.5, 0.5}}, "arbitrage");
    const Conjecture1Report rep = conjecture1_scan(arb, 8);
    CHECK_FALSE(rep.violated);
    for (const SweepRow& row : rep.rows) {
        CHECK(row.k_star == 1.0);
        CHECK(std::abs(row.g_star - rep.rows[0].g_star) <= 1e-12);
    }
}

TEST_CASE("flatness scan separates attractive from unattractive") {
    const Conjecture2Report hot = conjecture2_scan(ReturnPmf::bernoulli(0.8, 0.5), 10);
    CHECK(hot.satisfied);
    CHECK(hot.flat);

    const Conjecture2Report cold = conjecture2_scan(ReturnPmf::bernoulli(0.6, 0.5), 10);
    CHECK_FALSE(cold.satisfied);   // theta = 0.4/0.5 + 0.6/1.5 = 1.2
    CHECK_FALSE(cold.flat);
    CHECK(cold.max_gap > 1e-6);

    const ReturnPmf uni = ReturnPmf::uniform(-0.2, 1.1 * b_min(-0.2), 64);
    const Conjecture2Report flat_uni = conjecture2_scan(uni, 12);
    CHECK(flat_uni.satisfied);
    CHECK(flat_uni.flat);
}

TEST_CASE("cost table picks the best waiting period") {
    const Figure3Table table = figure3_table({0.6, 0.7, 0.8, 0.9}, 10, 0.1);
    REQUIRE(table.argmax_n.size() == 4);
    for (int am : table.argmax_n) CHECK(am == 2);

    // Vanishing cost: immediate betting wins and values approach the
    // costless optimum.
    const Figure3Table tiny = figure3_table({0.6, 0.8}, 8, 1e-9);
    for (std::size_t i = 0; i < tiny.p_values.size(); ++i) {
        CHECK(tiny.argmax_n[i] == 1);
        for (int n = 1; n <= tiny.n_max; ++n)
            CHECK(std::abs(tiny.g_star[i][static_cast<std::size_t>(n - 1)] -
                           bernoulli_closed_form(tiny.p_values[i], n).g_star) <= 1e-6);
    }

    // A cost can shut off betting at n = 1 while longer waits stay active:
    // the threshold probability decreases in n.
    const Figure3Table shut = figure3_table({0.62}, 4, 0.3);
    CHECK(shut.k_star[0][0] == 0.0);
    CHECK(shut.k_star[0][1] > 0.0);

    CHECK_THROWS_AS(figure3_table({}, 5, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(figure3_table({0.4}, 5, 0.1), std::invalid_argument);
}

TEST_CASE("b_min table is monotone in |a|") {
    const std::vector<Figure5Row> rows =
        figure5_table({-0.1, -0.5, -0.3, -0.9, -0.7});  // unsorted on purpose
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        CHECK(rows[i].abs_a < rows[i + 1].abs_a);
        CHECK(rows[i].b_min < rows[i + 1].b_min);
    }
    CHECK(rows[2].b_min == doctest::Approx(0.7564312086).epsilon(1e-9));
    CHECK(rows[4].b_min == doctest::Approx(b_min_lambert(-0.9)).epsilon(1e-12));
}

TEST_CASE("csv output is deterministic and carries the source tag") {
    const std::vector<SweepRow> rows = frequency_sweep(ReturnPmf::bernoulli(0.7, 0.5), 6);
    std::ostringstream first, second;
    write_sweep_csv(rows, first);
    write_sweep_csv(rows, second);
    CHECK(first.str() == second.str());
    CHECK(first.str().rfind("n,k_star,g_star,e_star,theta,merged\n", 0) == 0);
    CHECK(first.str().find("\r") == std::string::npos);

    std::ostringstream tagged;
    write_sweep_csv(rows, tagged, "figure2");
    CHECK(tagged.str().rfind("# source=figure2\n", 0) == 0);

    std::ostringstream fig3;
    write_figure3_csv(figure3_table({0.6}, 3, 0.1), fig3);
    CHECK(fig3.str().rfind("# source=figure3\np,n,k_star,g_star,argmax_n\n", 0) == 0);

    std::ostringstream fig5;
    write_figure5_csv(figure5_table({-0.5}), fig5);
    CHECK(fig5.str().rfind("# source=figure5\nabs_a,b_min\n", 0) == 0);
}

TEST_CASE("infinite theta prints as inf in csv") {
    const std::vector<SweepRow> rows = frequency_sweep(ReturnPmf::bernoulli(0.6, 1.0), 2);
    std::ostringstream os;
    write_sweep_csv(rows, os);
    CHECK(os.str().find(",inf,") != std::string::npos);
}

TEST_CASE("seeded generators are reproducible and respect their filters") {
    for (std::uint64_t seed : {1u, 2u, 3u, 10u, 77u}) {
        const ReturnPmf a = random_attractive_pmf(seed);
        const ReturnPmf b = random_attractive_pmf(seed);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a.atoms()[i].x == b.atoms()[i].x);
            CHECK(a.atoms()[i].p == b.atoms()[i].p);
        }
        CHECK(theta(a).theta <= 1.0);
        CHECK(a.min_x() > -0.95 - 1e-12);
        CHECK(a.max_x() < 3.0);
        CHECK(a.size() >= 3);
        CHECK(a.size() <= 6);

        CHECK(random_positive_edge_pmf(seed).mean() > 0.0);
    }
}

TEST_CASE("sufficiency holds on a reduced random suite") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const ReturnPmf pmf = random_attractive_pmf(seed);
        const std::vector<SweepRow> rows = frequency_sweep(pmf, 6);
        for (const SweepRow& row : rows) {
            CHECK(row.k_star == 1.0);
            CHECK(std::abs(row.e_star) <= 1e-9);
        }
    }
}

TEST_CASE("monotonicity holds on a reduced random suite") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const ReturnPmf pmf = random_positive_edge_pmf(seed);
        const Conjecture1Report rep = conjecture1_scan(pmf, 6, 1e-10, 2000000);
        CHECK_FALSE(rep.violated);
    }
}
