#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "slcap/condenser_solver.hpp"
#include "slcap/exponents.hpp"
#include "slcap/grid_capacity.hpp"
#include "slcap/grid_domain.hpp"
#include "slcap/radial_profile.hpp"
#include "slcap/step_function.hpp"

namespace slcap {

/// All reals are emitted with 17 significant digits so that round trips are
/// exact; NaN becomes null and infinite q is spelled "inf".
inline std::string json_real(double v) {
    if (std::isnan(v)) return "null";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string json_q(const LorentzExponents& e) {
    return e.q_infinite ? std::string("\"inf\"") : json_real(e.q);
}

inline std::string to_json(const NormResult& r) {
    std::ostringstream os;
    os << "{\"value\": " << json_real(r.value) << ", \"method\": \"" << to_string(r.method)
       << "\", \"abs_error\": " << json_real(r.abs_error) << "}";
    return os.str();
}

inline std::string to_json(const StepFunction& f) {
    std::ostringstream os;
    os << "{\"pieces\": [";
    for (std::size_t i = 0; i < f.pieces().size(); ++i) {
        if (i) os << ", ";
        os << "[" << json_real(f.pieces()[i].value) << ", " << json_real(f.pieces()[i].measure)
           << "]";
    }
    os << "]}";
    return os.str();
}

inline std::string to_json(const CondenserEstimate& est) {
    std::ostringstream os;
    os << "{\"n\": " << est.n << ", \"p\": " << json_real(est.exponents.p)
       << ", \"q\": " << json_q(est.exponents) << ", \"r\": " << json_real(est.r)
       << ", \"value\": " << json_real(est.value) << ", \"lower\": " << json_real(est.lower)
       << ", \"upper\": " << json_real(est.upper) << ", \"iterations\": " << est.iterations
       << ", \"residual\": " << json_real(est.residual)
       << ", \"certified\": " << (est.certified ? "true" : "false") << "}";
    return os.str();
}

inline std::string to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "r,lower,value,upper\n";
    for (const auto& row : rows) {
        os << json_real(row.r) << "," << json_real(row.lower) << "," << json_real(row.value)
           << "," << json_real(row.upper) << "\n";
    }
    return os.str();
}

inline std::string to_json(const std::vector<SweepRow>& rows, int n) {
    std::ostringstream os;
    os << "{\"n\": " << n << ", \"rows\": [";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) os << ", ";
        os << "{\"r\": " << json_real(rows[i].r) << ", \"lower\": " << json_real(rows[i].lower)
           << ", \"value\": " << json_real(rows[i].value)
           << ", \"upper\": " << json_real(rows[i].upper) << "}";
    }
    os << "]}";
    return os.str();
}

inline std::string to_json(const AxiomReport& r) {
    std::ostringstream os;
    os << "{\"trials\": " << r.trials << ", \"tolerance\": " << json_real(r.tolerance)
       << ", \"axioms\": {"
       << "\"monotonicity\": {\"pass\": " << r.monotonicity_pass << "}, "
       << "\"domain_monotonicity\": {\"pass\": " << r.domain_monotonicity_pass << "}, "
       << "\"subadditivity\": {\"pass\": " << r.subadditivity_pass << "}, "
       << "\"norm_flavor_subadditivity\": {\"pass\": " << r.norm_flavor_subadditivity_pass
       << ", \"checks\": " << r.norm_flavor_checks << "}, "
       << "\"disjoint_additivity\": {\"pass\": " << r.disjoint_additivity_pass << "}}, "
       << "\"failures\": [";
    for (std::size_t i = 0; i < r.failures.size(); ++i) {
        if (i) os << ", ";
        const auto& f = r.failures[i];
        os << "{\"trial\": " << f.trial << ", \"seed\": " << f.seed << ", \"axiom\": \""
           << f.axiom << "\", \"lhs\": " << json_real(f.lhs)
           << ", \"rhs\": " << json_real(f.rhs) << "}";
    }
    os << "], \"all_passed\": " << (r.all_passed() ? "true" : "false") << "}";
    return os.str();
}

inline std::string error_json(const std::string& type, const std::string& message) {
    nlohmann::json m; // reuse the parser's escaping for the message text
    m = message;
    std::ostringstream os;
    os << "{\"error\": {\"type\": \"" << type << "\", \"message\": " << m.dump() << "}}";
    return os.str();
}

// ---------- parsing ----------

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

inline StepFunction parse_step_function(const nlohmann::json& j) {
    if (!j.contains("pieces") || !j["pieces"].is_array()) {
        throw std::invalid_argument("StepFunction JSON needs a \"pieces\" array");
    }
    std::vector<Piece> raw;
    for (const auto& item : j["pieces"]) {
        if (!item.is_array() || item.size() != 2) {
            throw std::invalid_argument("each piece must be a [value, measure] pair");
        }
        raw.push_back(Piece{item[0].get<double>(), item[1].get<double>()});
    }
    return StepFunction::from_pieces(std::move(raw));
}

inline SampledGrid parse_sampled_grid(const nlohmann::json& j) {
    SampledGrid g;
    g.dimension = j.at("n").get<int>();
    g.h = j.at("h").get<double>();
    g.values = j.at("values").get<std::vector<double>>();
    g.shape = j.at("shape").get<std::vector<int>>();
    if (j.contains("origin")) g.origin = j["origin"].get<std::vector<double>>();
    g.validate();
    return g;
}

inline RadialProfile parse_radial_profile(const nlohmann::json& j) {
    return RadialProfile(j.at("knots").get<std::vector<double>>(),
                         j.at("values").get<std::vector<double>>());
}

inline GridDomain parse_grid_domain(const nlohmann::json& j) {
    if (j.contains("disk_radius")) {
        return GridDomain::disk(j.at("disk_radius").get<double>(), j.at("h").get<double>());
    }
    const int n = j.at("n").get<int>();
    auto shape = j.at("shape").get<std::vector<int>>();
    const double h = j.at("h").get<double>();
    GridDomain d = GridDomain::box(n, shape, h);
    if (j.contains("boundary")) {
        std::fill(d.boundary.begin(), d.boundary.end(), char(0));
        for (const auto& cell : j["boundary"]) {
            int idx = 0;
            if (cell.is_array()) {
                idx = n == 1 ? cell[0].get<int>()
                             : d.index(cell[0].get<int>(), cell[1].get<int>());
            } else {
                idx = cell.get<int>();
            }
            d.boundary.at(static_cast<std::size_t>(idx)) = 1;
        }
        d.validate();
    }
    return d;
}

inline CellSet parse_cell_set(const nlohmann::json& j, const GridDomain& d) {
    const auto& arr = j.is_array() ? j : j.at("cells");
    std::vector<int> cells;
    for (const auto& cell : arr) {
        if (cell.is_array()) {
            cells.push_back(d.dimension == 1 ? cell[0].get<int>()
                                             : d.index(cell[0].get<int>(), cell[1].get<int>()));
        } else {
            cells.push_back(cell.get<int>());
        }
    }
    return CellSet(std::move(cells));
}

/// Parse a q argument that is either a real >= 1 or the string "inf".
inline LorentzExponents parse_exponents(double p, const std::string& q_text) {
    if (q_text == "inf" || q_text == "Inf" || q_text == "INF") {
        return LorentzExponents::with_infinite_q(p);
    }
    return LorentzExponents(p, std::stod(q_text));
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << content;
}

} // namespace slcap
