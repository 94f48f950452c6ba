#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include "slcap/io.hpp"

using namespace slcap;

TEST_CASE("real formatting round-trips at 17 significant digits") {
    for (double v : {1.0, 2.0 / 3.0, 3.141592653589793, 1.2345678901234567e-12,
                     9.876543210987654e+17}) {
        const std::string text = json_real(v);
        CHECK(std::stod(text) == v);
    }
    CHECK(json_real(std::numeric_limits<double>::quiet_NaN()) == "null");
}

TEST_CASE("step function JSON round trip") {
    const auto f = StepFunction::from_pieces({{3.0, 1.5}, {1.0, 2.0}});
    const auto text = to_json(f);
    const auto parsed = parse_step_function(nlohmann::json::parse(text));
    CHECK(parsed == f);
}

TEST_CASE("norm result serialization shape") {
    const auto text = to_json(NormResult::exact(2.0));
    const auto j = nlohmann::json::parse(text);
    CHECK(j["value"] == 2.0);
    CHECK(j["method"] == "exact");
    CHECK(j["abs_error"] == 0.0);
}

TEST_CASE("exponent parsing accepts inf") {
    const auto e = parse_exponents(2.0, "inf");
    CHECK(e.q_infinite);
    const auto e2 = parse_exponents(2.0, "1.5");
    CHECK(e2.q == 1.5);
    CHECK_THROWS_AS(parse_exponents(0.5, "1"), std::invalid_argument);
}

TEST_CASE("Hoelder conjugates") {
    for (double p : {1.5, 2.0, 3.0, 7.25}) {
        const LorentzExponents e(p, 1.0);
        CHECK(e.p_conjugate() * (p - 1.0) == Catch::Approx(p).epsilon(1e-15));
        CHECK(std::isinf(e.q_conjugate()));
    }
    CHECK(LorentzExponents(2.0, 2.0).q_conjugate() == 2.0);
    CHECK(LorentzExponents::with_infinite_q(2.0).q_conjugate() == 1.0);
}

TEST_CASE("condenser estimate JSON carries nulls outside (n,1)") {
    CondenserEstimate est;
    est.n = 2;
    est.exponents = LorentzExponents(2.0, 2.0);
    est.value = 1.5;
    est.slopes = {1.0};
    const auto j = nlohmann::json::parse(to_json(est));
    CHECK(j["lower"].is_null());
    CHECK(j["upper"].is_null());
    CHECK(j["certified"] == false);
}

TEST_CASE("sampled grid and domain parsing") {
    const auto g = parse_sampled_grid(nlohmann::json::parse(
        R"({"n": 2, "h": 0.5, "values": [0,1,2,3,4,5], "shape": [2,3]})"));
    CHECK(g.dimension == 2);
    CHECK(g.values.size() == 6);

    const auto d = parse_grid_domain(
        nlohmann::json::parse(R"({"n": 2, "h": 0.1, "shape": [8, 8]})"));
    CHECK(d.cell_count() == 64);
    CHECK(d.is_boundary(d.index(0, 0)));
    CHECK_FALSE(d.is_boundary(d.index(3, 3)));

    const auto cells =
        parse_cell_set(nlohmann::json::parse(R"({"cells": [[3,3],[3,4]]})"), d);
    CHECK(cells.cells.size() == 2);

    const auto disk = parse_grid_domain(
        nlohmann::json::parse(R"({"disk_radius": 1.0, "h": 0.1})"));
    CHECK(disk.dimension == 2);
}

TEST_CASE("radial profile parsing validates boundary values") {
    const auto prof = parse_radial_profile(
        nlohmann::json::parse(R"({"knots": [0.0, 0.5, 1.0], "values": [1.0, 0.25, 0.0]})"));
    CHECK(prof.interval_count() == 2);
    CHECK_THROWS_AS(parse_radial_profile(nlohmann::json::parse(
                        R"({"knots": [0.0, 1.0], "values": [0.9, 0.0]})")),
                    std::invalid_argument);
}

TEST_CASE("error objects are valid JSON") {
    const auto text = error_json("validation", "bad \"quoted\" input\npath");
    const auto j = nlohmann::json::parse(text);
    CHECK(j["error"]["type"] == "validation");
}
