#pragma once

// JSON configuration for the built-in separable density family and for the
// piezoelectric application.
//
// Density:
//   {"family": "separable", "preset": "exp",
//    "c":   {"c0": 1, "a": 0, "b": [1]},
//    "mu":  {"kind": "exp", "amp": 1, "scale": 1} | {"kind": "uniform", "amp": 1, "width": 1} | {"kind": "zero"},
//    "phi": {"kind": "one" | "cauchy" | "gauss"},
//    "R": 2}
// Every key is optional; explicit keys override the preset ("exp",
// "cauchy", "uniform", "zero"; default "exp").
//
// Piezo:
//   {"f": [1, 0, 1] | {"preset": "one"} , "alpha": [0.1] | {"preset": "zero"},
//    "f_min": 1, "coeff_max": 0.1, "coeff_lip": 0.2, "density": {...}}
// Polynomials list coefficients in increasing degree.

#include "json.hpp"

#include "preisach/density.hpp"
#include "preisach/error.hpp"
#include "preisach/piezo.hpp"

#include <fstream>
#include <functional>
#include <string>
#include <vector>

namespace preisach::config {

using nlohmann::json;

namespace detail {

inline double number(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ParseError(std::string("'") + key + "' must be a number");
    return j.at(key).get<double>();
}

inline std::string text(const json& j, const char* key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_string()) throw ParseError(std::string("'") + key + "' must be a string");
    return j.at(key).get<std::string>();
}

struct Shape {
    std::string mu = "exp";
    double mu_amp = 1.0;
    double mu_scale = 1.0;
    double mu_width = 1.0;
    std::string phi = "one";
    double c0 = 1.0;
    double a = 0.0;
    std::vector<double> b{1.0};
    double R = 2.0;
};

inline Shape preset(const std::string& name) {
    Shape s;
    if (name == "exp") return s;
    if (name == "cauchy") {
        s.phi = "cauchy";
        return s;
    }
    if (name == "uniform") {
        s.mu = "uniform";
        s.R = 1.0;
        return s;
    }
    if (name == "zero") {
        s.mu = "zero";
        s.c0 = 0.0;
        s.R = 1.0;
        return s;
    }
    throw ParseError("unknown density preset '" + name + "'");
}

} // namespace detail

inline DensityModel model_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("density config must be a JSON object");
    const auto family = detail::text(j, "family", "separable");
    if (family != "separable") throw ParseError("unsupported density family '" + family + "'");
    auto s = detail::preset(detail::text(j, "preset", "exp"));

    if (j.contains("c")) {
        const auto& c = j.at("c");
        if (!c.is_object()) throw ParseError("'c' must be an object");
        s.c0 = detail::number(c, "c0", s.c0);
        s.a = detail::number(c, "a", s.a);
        if (c.contains("b")) {
            if (!c.at("b").is_array()) throw ParseError("'c.b' must be an array");
            s.b.clear();
            for (const auto& x : c.at("b")) {
                if (!x.is_number()) throw ParseError("'c.b' entries must be numbers");
                s.b.push_back(x.get<double>());
            }
        }
    }
    if (j.contains("mu")) {
        const auto& m = j.at("mu");
        if (!m.is_object()) throw ParseError("'mu' must be an object");
        s.mu = detail::text(m, "kind", s.mu);
        s.mu_amp = detail::number(m, "amp", s.mu_amp);
        s.mu_scale = detail::number(m, "scale", s.mu_scale);
        s.mu_width = detail::number(m, "width", s.mu_width);
        if (s.mu == "uniform" && !j.contains("R")) s.R = s.mu_width;
    }
    if (j.contains("phi")) {
        const auto& p = j.at("phi");
        if (!p.is_object()) throw ParseError("'phi' must be an object");
        s.phi = detail::text(p, "kind", s.phi);
    }
    s.R = detail::number(j, "R", s.R);

    try {
        Separable parts;
        parts.c = s.a == 0.0 ? profiles::constant(s.c0, s.b.size()) : profiles::tanh_ridge(s.c0, s.a, s.b);
        if (s.mu == "exp") {
            parts.m = profiles::exponential(s.mu_amp, s.mu_scale, s.R);
        } else if (s.mu == "uniform") {
            parts.m = profiles::uniform(s.mu_amp, s.mu_width);
            parts.m.support = s.R;
        } else if (s.mu == "zero") {
            parts.m = profiles::zero(s.R);
        } else {
            throw ParseError("unknown mu kind '" + s.mu + "'");
        }
        if (s.phi == "one") {
            parts.phi = profiles::one();
        } else if (s.phi == "cauchy") {
            parts.phi = profiles::cauchy();
        } else if (s.phi == "gauss") {
            parts.phi = profiles::gauss();
        } else {
            throw ParseError("unknown phi kind '" + s.phi + "'");
        }
        return make_separable(std::move(parts));
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("invalid density config: ") + e.what());
    }
}

inline json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

inline DensityModel load_model(const std::string& path) { return model_from_json(load_json(path)); }

/// Polynomial sum_i c_i x^i (Horner).
inline std::function<double(double)> polynomial(std::vector<double> coeffs) {
    return [c = std::move(coeffs)](double x) {
        double y = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) y = y * x + *it;
        return y;
    };
}

namespace detail {

inline std::function<double(double)> scalar_function(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("piezo config needs '") + key + "'");
    const auto& v = j.at(key);
    if (v.is_number()) return polynomial({v.get<double>()});
    if (v.is_array()) {
        std::vector<double> c;
        for (const auto& x : v) {
            if (!x.is_number()) throw ParseError(std::string("'") + key + "' coefficients must be numbers");
            c.push_back(x.get<double>());
        }
        if (c.empty()) throw ParseError(std::string("'") + key + "' has no coefficients");
        return polynomial(std::move(c));
    }
    if (v.is_object()) {
        if (v.contains("poly")) return scalar_function(v, "poly");
        const auto name = text(v, "preset", "");
        if (name == "one") return polynomial({1.0});
        if (name == "zero") return polynomial({0.0});
        if (name == "quadratic") return polynomial({1.0, 0.0, 1.0});
        throw ParseError(std::string("unknown preset for '") + key + "'");
    }
    throw ParseError(std::string("'") + key + "' must be a number, coefficient array or object");
}

} // namespace detail

inline piezo::PiezoConfig piezo_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("piezo config must be a JSON object");
    piezo::PiezoConfig cfg;
    cfg.f = detail::scalar_function(j, "f");
    cfg.alpha = detail::scalar_function(j, "alpha");
    cfg.f_min = detail::number(j, "f_min", 0.0);
    if (j.contains("coeff_max")) cfg.coeff_max = detail::number(j, "coeff_max", 0.0);
    if (j.contains("coeff_lip")) cfg.coeff_lip = detail::number(j, "coeff_lip", 0.0);
    cfg.density = model_from_json(j.contains("density") ? j.at("density") : json::object());
    try {
        piezo::validate(cfg);
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("invalid piezo config: ") + e.what());
    }
    return cfg;
}

} // namespace preisach::config
