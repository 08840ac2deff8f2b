#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "dzl/lab.hpp"
#include "dzl/parallel.hpp"

using namespace dzl;

namespace {

ExperimentConfig cfg_of(const std::string& text) {
    std::istringstream is(text);
    return parse_config(is);
}

template <class T>
T cell(const Table& t, std::size_t row, const std::string& col) {
    return std::get<T>(t.rows.at(row).cells.at(t.column(col)));
}

struct ThreadsEnv {
    explicit ThreadsEnv(const char* v) { setenv("DZL_THREADS", v, 1); }
    ~ThreadsEnv() { unsetenv("DZL_THREADS"); }
};

}  // namespace

TEST_SUITE("lab") {

TEST_CASE("thread count from the environment") {
    CHECK(thread_count() == 1);
    {
        ThreadsEnv e("4");
        CHECK(thread_count() == 4);
    }
    {
        ThreadsEnv e("100000");
        CHECK(thread_count() == 256);
    }
    {
        ThreadsEnv e("zero");
        CHECK(thread_count() == 1);
    }
    ThreadsEnv e("3");
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                        if (i == 7) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
}

TEST_CASE("build_function applies the twist") {
    const auto g = build_function(FunctionSpec::parse("ones:c=0.1"), 100);
    CHECK(g.label() == "ones+twist");
    CHECK(std::abs(std::abs(g[7]) - 1.0) < 1e-12);
    CHECK(build_function(FunctionSpec::parse("dk:k=2"), 10)[6] == cplx{4.0, 0.0});
    CHECK(std::string(library_version()).size() > 0);
}

TEST_CASE("E1 small run") {
    const auto rep = run_experiment(cfg_of("experiment = E1\nfunction = ones\nN = 1000, 2000\nt_range = -10, 10\n"));
    const auto& t = rep.table("zero_free");
    REQUIRE(t.rows.size() == 2);
    CHECK(cell<std::int64_t>(t, 0, "zero_free") == 1);
    CHECK(cell<std::int64_t>(t, 0, "boxes") == 20);
    CHECK(cell<double>(t, 1, "min_boundary_modulus") > 0.0);
    CHECK(std::get<std::int64_t>(rep.summary.at("all_zero_free")) == 1);
    CHECK(rep.config.at("N") == "1000,2000");
    CHECK_FALSE(rep.any_failed_rows());
}

TEST_CASE("row errors are captured, not thrown") {
    const auto rep = run_experiment(cfg_of("experiment = E1\nfunction = ones\nN = 2, 1000\nt_range = -2, 2\n"));
    const auto& t = rep.table("zero_free");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].failed);
    CHECK(t.rows[0].error.find("threshold") != std::string::npos);
    CHECK_FALSE(t.rows[1].failed);
}

TEST_CASE("E2 is reproducible byte for byte and independent of threads") {
    const std::string text =
        "experiment = E2\nfunction = ones:c=0.1\nN = 2^10, 2^11\nt_range = -6, 6\nmodel_M = 20000\nseed = 5\n";
    const std::string a = report_to_json(run_experiment(cfg_of(text)));
    const std::string b = report_to_json(run_experiment(cfg_of(text)));
    CHECK(a == b);
    ThreadsEnv e("3");
    const std::string c = report_to_json(run_experiment(cfg_of(text)));
    CHECK(a == c);
    const auto rep = report_from_json(a);
    const auto& t = rep.table("optimality");
    REQUIRE(t.rows.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        if (cell<double>(t, i, "rouche_ratio") < 1.0)
            CHECK(cell<std::int64_t>(t, i, "model_winding") == cell<std::int64_t>(t, i, "rouche_poly_winding"));
        CHECK(cell<double>(t, i, "sigma_max") < 1.5);
    }
}

TEST_CASE("E3 tables") {
    const auto rep = run_experiment(cfg_of("experiment = E3\nN = 1\ndeltas = 0, 0.1\nJ = 5\n"));
    CHECK(rep.table("coefficients").rows.size() == 22);
    CHECK(rep.table("properties").rows.size() == 5);
    CHECK(rep.table("chain").rows.size() == 3);
    CHECK(std::get<std::int64_t>(rep.summary.at("fourier_all_pass")) == 1);
    CHECK_FALSE(rep.any_failed_rows());
}

TEST_CASE("E4 selected checks") {
    const auto rep = run_experiment(cfg_of("experiment = E4\nN = 1\nchecks = hankel,shiu\n"));
    CHECK(rep.table("hankel").rows.size() == 42);
    CHECK_THROWS_AS(rep.table("perron"), std::out_of_range);
    CHECK_FALSE(rep.any_failed_rows());
}

TEST_CASE("E5 ladder") {
    const auto rep =
        run_experiment(cfg_of("experiment = E5\nfunction = ones:c=0.1\nN = 1\nlog10_N = 10, 40\nmodel_M = 20000\n"));
    const auto& t = rep.table("model_m");
    REQUIRE(t.rows.size() == 2);
    CHECK(cell<double>(t, 1, "logN") == doctest::Approx(40.0 * std::log(10.0)));
    CHECK(rep.table("constants").rows.size() == 15);
    CHECK(rep.summary.count("criterion_met") == 1);
}

}
