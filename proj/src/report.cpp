#include "polysieve/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include <unistd.h>

namespace polysieve {

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Rational& x) { return x.to_string(); }

Json to_json(const QuadPoly& f) {
    return Json{{"A", f.A()}, {"B", f.B()}, {"C", f.C()}, {"discriminant", f.discriminant()}};
}

Json to_json(const IntRange& r) {
    if (r.empty()) return nullptr;
    return Json::array({r.lo, r.hi});
}

Json to_json(const HypothesisCheck& h) {
    return Json{{"holds", h.holds},
                {"disc_condition", h.disc_condition},
                {"growth_condition", h.growth_condition},
                {"disc_margin", h.disc_margin},
                {"growth_margin", h.growth_margin}};
}

Json to_json(const BoundsReport& r) {
    Json j;
    j["poly"] = to_json(r.f);
    j["Q"] = r.Q;
    j["N"] = r.N;
    j["fQ"] = r.fQ;
    j["norm"] = r.norm;
    j["residual"] = r.residual;
    j["matvecs"] = r.matvecs;
    j["method"] = to_string(r.method);
    j["basis"] = to_string(r.basis);
    j["side"] = r.side;
    j["dense_norm"] = r.dense_norm ? Json(*r.dense_norm) : Json(nullptr);
    j["lower_bound"] = r.lower_bound;
    j["phi_sum"] = r.phi_sum;
    j["fraction_count"] = r.fraction_count;
    j["trivial_bound"] = r.trivial_bound;
    j["trivial_q_arm"] = r.trivial_q_arm;
    j["trivial_spacing_arm"] = r.trivial_spacing_arm;
    Json fam = Json::array();
    for (const auto& b : r.bounds) {
        fam.push_back(Json{{"eps", b.eps},
                           {"theorem1_rhs", b.theorem1},
                           {"conjectural_rhs", b.conjectural},
                           {"norm_over_theorem1", r.norm / b.theorem1},
                           {"norm_over_conjectural", r.norm / b.conjectural}});
    }
    j["bounds"] = fam;
    j["ratios"] = Json{{"norm_over_lower", r.norm / r.lower_bound}, {"norm_over_trivial", r.norm / r.trivial_bound}};
    j["hypothesis"] = to_json(r.hypothesis);
    Json blocks = Json::array();
    for (const auto& b : r.blocks) {
        blocks.push_back(Json{{"j", b.j},
                              {"M", b.M},
                              {"q_range", to_json(b.block)},
                              {"fractions", b.fractions},
                              {"k_delta", b.k_delta},
                              {"trivial_k_bound", b.trivial}});
    }
    j["dyadic_blocks"] = blocks;
    j["checks"] = Json{{"lower_bound", r.lower_ok},
                       {"spacing_arm", r.upper_ok},
                       {"trivial_bound", r.trivial_ok},
                       {"dense_cross_check", r.dense_ok}};
    j["pass"] = r.pass;
    return j;
}

Json to_json(const WitnessReport& r) {
    Json j;
    j["poly"] = to_json(r.f);
    j["m"] = r.m;
    j["primes"] = r.primes;
    j["Q_m"] = r.Q_m;
    j["N_m"] = r.N_m;
    j["sum_length"] = r.sum_length;
    j["farey_cluster_size"] = r.cluster.size();
    j["crt_prediction"] = r.crt_prediction;
    j["crt_count"] = r.crt_count;
    j["scan_count"] = r.scan_count;
    j["mass"] = r.mass;
    j["xi_estimate"] = r.xi_estimate;
    j["min_term"] = r.min_term;
    Json cl = Json::array();
    for (const auto& c : r.cluster) {
        cl.push_back(Json{{"q", c.q}, {"a", c.a}, {"alpha", to_json(c.alpha)}, {"term", c.term}});
    }
    j["cluster"] = cl;
    Json samples = Json::array();
    for (const auto& s : r.samples) {
        samples.push_back(Json{{"alpha", to_json(s.alpha)},
                               {"closed", to_json(s.closed)},
                               {"direct", to_json(s.direct)},
                               {"rel_error", s.rel_error}});
    }
    j["kernel_samples"] = samples;
    j["max_sample_error"] = r.max_sample_error;
    j["checks"] = Json{{"cluster_size", r.size_ok},
                       {"crt_count", r.crt_ok},
                       {"window", r.window_ok},
                       {"mass", r.mass_ok},
                       {"kernel_samples", r.samples_ok}};
    j["pass"] = r.pass;
    return j;
}

Json to_json(const TauIdentity& t) {
    return Json{{"tau_product", to_json(t.tau_product)},
                {"tau_psi", to_json(t.tau_psi)},
                {"lhs", t.lhs},
                {"rhs", t.rhs},
                {"rel_error", t.rel_error},
                {"holds", t.holds}};
}

Json to_json(const MultSieveCheck& m) {
    return Json{{"lhs", m.lhs},
                {"rhs", m.rhs},
                {"holds", m.holds},
                {"terms", m.terms},
                {"excluded", m.excluded},
                {"min_weight_ratio", m.min_weight_ratio},
                {"weights_dominate", m.weights_dominate}};
}

Json document(std::string_view command, const Json& body) {
    Json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = std::string(command);
    for (const auto& [k, v] : body.items()) doc[k] = v;
    return doc;
}

std::string render(const Json& doc) { return doc.dump(2) + "\n"; }

std::string format_double(double x) {
    if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string bounds_csv(std::span<const BoundsReport> reports) {
    std::string out = "A,B,C,Q,N,norm,lower_bound,spacing_arm,trivial_bound";
    if (reports.empty()) return out + "\n";
    const auto& eps = reports.front().bounds;
    for (const auto& b : eps) out += ",theorem1_eps" + format_double(b.eps);
    for (const auto& b : eps) out += ",conjectural_eps" + format_double(b.eps);
    out += ",pass\n";
    for (const auto& r : reports) {
        out += std::to_string(r.f.A()) + "," + std::to_string(r.f.B()) + "," + std::to_string(r.f.C()) + "," +
               std::to_string(r.Q) + "," + std::to_string(r.N) + "," + format_double(r.norm) + "," +
               format_double(r.lower_bound) + "," + format_double(r.trivial_spacing_arm) + "," +
               format_double(r.trivial_bound);
        for (const auto& b : r.bounds) out += "," + format_double(b.theorem1);
        for (const auto& b : r.bounds) out += "," + format_double(b.conjectural);
        out += r.pass ? ",true\n" : ",false\n";
    }
    return out;
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    const fs::path tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigurationError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw ConfigurationError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignore;
        fs::remove(tmp, ignore);
        throw ConfigurationError("cannot move report into place at " + path.string() + ": " + ec.message());
    }
}

} // namespace polysieve
