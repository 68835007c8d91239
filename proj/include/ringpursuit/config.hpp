#pragma once

// Run configuration: JSON documents and the string forms shared with the CLI.

#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ringpursuit/angles.hpp"
#include "ringpursuit/param_sweep.hpp"
#include "ringpursuit/scenario.hpp"

namespace ringpursuit {

class ConfigSyntaxError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class SolveKind { Point, Exc, Tac, Tgc, Worst };

inline SolveKind parse_solve_kind(const std::string& s) {
    if (s == "point") return SolveKind::Point;
    if (s == "exc") return SolveKind::Exc;
    if (s == "tac") return SolveKind::Tac;
    if (s == "tgc") return SolveKind::Tgc;
    if (s == "worst") return SolveKind::Worst;
    throw DomainError("kind", "must be one of point|exc|tac|tgc|worst (got '" + s + "')");
}

constexpr const char* to_string(SolveKind k) {
    switch (k) {
        case SolveKind::Point: return "point";
        case SolveKind::Exc: return "exc";
        case SolveKind::Tac: return "tac";
        case SolveKind::Tgc: return "tgc";
        case SolveKind::Worst: return "worst";
    }
    return "?";
}

namespace detail {

inline std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

inline double parse_real(const std::string& key, const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size() && std::isfinite(v)) return v;
    } catch (const std::logic_error&) {
    }
    throw DomainError(key, "expected a number (got '" + s + "')");
}

}  // namespace detail

/// Radians, optionally written as a multiple of pi: "5.0265", "1.6pi", "pi", "-0.5pi".
inline double parse_angle(const std::string& key, const std::string& text) {
    const std::string s = detail::lower(detail::trim(text));
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        std::string coeff = detail::trim(s.substr(0, s.size() - 2));
        if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
        if (coeff.empty() || coeff == "+") return kPi;
        if (coeff == "-") return -kPi;
        return detail::parse_real(key, coeff) * kPi;
    }
    return detail::parse_real(key, s);
}

inline Direction parse_direction(const std::string& key, const std::string& text) {
    const std::string s = detail::lower(detail::trim(text));
    if (s == "cw") return Direction::CW;
    if (s == "ccw") return Direction::CCW;
    throw DomainError(key, "must be cw or ccw (got '" + text + "')");
}

/// "theta:dir" or "theta:dir:favorable" (also "fixed").
inline PursuerSpec parse_pursuer(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto colon = text.find(':', start);
        parts.push_back(text.substr(start, colon - start));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    if (parts.size() < 2 || parts.size() > 3) {
        throw DomainError("pursuer", "expected theta:dir[:favorable] (got '" + text + "')");
    }
    PursuerSpec p;
    p.theta_p0 = parse_angle("pursuer", parts[0]);
    p.direction = parse_direction("pursuer", parts[1]);
    if (parts.size() == 3) {
        const std::string policy = detail::lower(detail::trim(parts[2]));
        if (policy == "favorable") {
            p.policy = DirectionPolicy::Favorable;
        } else if (policy != "fixed") {
            throw DomainError("pursuer", "policy must be fixed or favorable (got '" + parts[2] + "')");
        }
    }
    p.validate();
    return p;
}

inline std::vector<double> parse_value_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string item = detail::trim(text.substr(start, comma - start));
        if (item.empty()) throw DomainError(key, "empty entry in list '" + text + "'");
        out.push_back(detail::parse_real(key, item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

struct HeadingRange {
    double from = kPi;
    double to = kTwoPi;
    int count = 73;
};

struct RunConfig {
    double R = 1.0;
    double rho = 0.5;
    double gamma = 0.5;
    double r = 0.4;
    ToleranceConfig tol;

    std::optional<double> heading;
    HeadingRange headings;
    Direction direction = Direction::CW;
    std::vector<PursuerSpec> pursuers;

    SolveKind kind = SolveKind::Worst;
    std::optional<double> theta0;

    SweepAxis vary = SweepAxis::Gamma;
    std::vector<double> values;

    int grid = 720;
    double resolution = 1e-6;

    std::string out;
    std::string svg;

    ScenarioParams scenario() const { return {R, rho, gamma, r, tol}; }

    /// Checks everything that does not depend on the subcommand.
    void validate() const {
        (void)scenario();
        if (heading && !std::isfinite(*heading)) throw DomainError("heading", "must be finite");
        if (theta0 && !std::isfinite(*theta0)) throw DomainError("theta0", "must be finite");
        if (!(std::isfinite(headings.from) && std::isfinite(headings.to))) {
            throw DomainError("headings", "bounds must be finite");
        }
        if (headings.count < 1) throw DomainError("headings.count", "must be >= 1");
        if (headings.count > 1 && !(headings.to > headings.from)) {
            throw DomainError("headings", "need to > from when count > 1");
        }
        for (const auto& p : pursuers) p.validate();
        for (double v : values) (void)with_axis(scenario(), vary, v);
        if (grid < 3) throw DomainError("grid", "must be >= 3 (got " + std::to_string(grid) + ")");
        if (!(std::isfinite(resolution) && resolution > 0.0)) {
            throw DomainError("resolution", "must be finite and > 0");
        }
    }
};

namespace detail {

using nlohmann::json;

inline double json_number(const json& v, const std::string& key) {
    if (!v.is_number()) throw DomainError(key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw DomainError(key, "must be finite");
    return d;
}

inline int json_int(const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw DomainError(key, "expected an integer");
    return v.get<int>();
}

inline std::string json_string(const json& v, const std::string& key) {
    if (!v.is_string()) throw DomainError(key, "expected a string");
    return v.get<std::string>();
}

inline double json_angle(const json& v, const std::string& key) {
    if (v.is_string()) return parse_angle(key, v.get<std::string>());
    return json_number(v, key);
}

inline PursuerSpec json_pursuer(const json& v, const std::string& key) {
    if (v.is_string()) return parse_pursuer(v.get<std::string>());
    if (!v.is_object()) throw DomainError(key, "expected \"theta:dir\" or an object");
    PursuerSpec p;
    bool have_theta = false;
    for (const auto& [k, item] : v.items()) {
        const std::string sub = key + "." + k;
        if (k == "theta") {
            p.theta_p0 = json_angle(item, sub);
            have_theta = true;
        } else if (k == "direction") {
            p.direction = parse_direction(sub, json_string(item, sub));
        } else if (k == "policy") {
            const std::string s = lower(json_string(item, sub));
            if (s == "favorable") {
                p.policy = DirectionPolicy::Favorable;
            } else if (s != "fixed") {
                throw DomainError(sub, "must be fixed or favorable");
            }
        } else {
            throw DomainError(sub, "unknown key");
        }
    }
    if (!have_theta) throw DomainError(key + ".theta", "missing");
    return p;
}

template <class F>
void for_each_member(const json& obj, const std::string& prefix, F&& f) {
    if (!obj.is_object()) throw DomainError(prefix, "expected an object");
    for (const auto& [k, v] : obj.items()) f(k, v, prefix.empty() ? k : prefix + "." + k);
}

// Rejects repeated keys within one object; plain nlohmann keeps the last one.
inline json parse_strict(const std::string& text) {
    std::vector<std::set<std::string>> seen;
    json::parser_callback_t cb = [&seen](int, json::parse_event_t event, json& parsed) {
        switch (event) {
            case json::parse_event_t::object_start: seen.emplace_back(); break;
            case json::parse_event_t::object_end: seen.pop_back(); break;
            case json::parse_event_t::key: {
                const auto key = parsed.get<std::string>();
                if (!seen.back().insert(key).second) throw ConfigSyntaxError("duplicate key '" + key + "'");
                break;
            }
            default: break;
        }
        return true;
    };
    try {
        return json::parse(text, cb);
    } catch (const json::parse_error& e) {
        throw ConfigSyntaxError(e.what());
    }
}

}  // namespace detail

/// Parses a JSON run configuration, filling defaults for absent keys.
inline RunConfig parse_config(const std::string& text, RunConfig cfg = {}) {
    using detail::json;
    const json doc = detail::parse_strict(text);
    if (!doc.is_object()) throw ConfigSyntaxError("top level must be an object");

    detail::for_each_member(doc, "", [&](const std::string& k, const json& v, const std::string& key) {
        if (k == "R") {
            cfg.R = detail::json_number(v, key);
        } else if (k == "rho") {
            cfg.rho = detail::json_number(v, key);
        } else if (k == "gamma") {
            cfg.gamma = detail::json_number(v, key);
        } else if (k == "r") {
            cfg.r = detail::json_number(v, key);
        } else if (k == "tol") {
            detail::for_each_member(v, key, [&](const std::string& tk, const json& tv, const std::string& tkey) {
                if (tk == "angle_tol") {
                    cfg.tol.angle_tol = detail::json_number(tv, tkey);
                } else if (tk == "range_tol") {
                    cfg.tol.range_tol = detail::json_number(tv, tkey);
                } else if (tk == "time_step") {
                    cfg.tol.time_step = detail::json_number(tv, tkey);
                } else if (tk == "max_bisection_iters") {
                    cfg.tol.max_bisection_iters = detail::json_int(tv, tkey);
                } else {
                    throw DomainError(tkey, "unknown key");
                }
            });
        } else if (k == "heading") {
            cfg.heading = detail::json_angle(v, key);
        } else if (k == "headings") {
            detail::for_each_member(v, key, [&](const std::string& hk, const json& hv, const std::string& hkey) {
                if (hk == "from") {
                    cfg.headings.from = detail::json_angle(hv, hkey);
                } else if (hk == "to") {
                    cfg.headings.to = detail::json_angle(hv, hkey);
                } else if (hk == "count") {
                    cfg.headings.count = detail::json_int(hv, hkey);
                } else {
                    throw DomainError(hkey, "unknown key");
                }
            });
        } else if (k == "direction") {
            cfg.direction = parse_direction(key, detail::json_string(v, key));
        } else if (k == "pursuers") {
            if (!v.is_array()) throw DomainError(key, "expected an array");
            cfg.pursuers.clear();
            for (std::size_t i = 0; i < v.size(); ++i) {
                cfg.pursuers.push_back(detail::json_pursuer(v[i], key + "[" + std::to_string(i) + "]"));
            }
        } else if (k == "kind") {
            cfg.kind = parse_solve_kind(detail::json_string(v, key));
        } else if (k == "theta0") {
            cfg.theta0 = detail::json_angle(v, key);
        } else if (k == "sweep") {
            detail::for_each_member(v, key, [&](const std::string& sk, const json& sv, const std::string& skey) {
                if (sk == "vary") {
                    const std::string axis = detail::json_string(sv, skey);
                    if (axis != "gamma" && axis != "rho" && axis != "r") {
                        throw DomainError(skey, "must be one of gamma, rho, r (got '" + axis + "')");
                    }
                    cfg.vary = parse_sweep_axis(axis);
                } else if (sk == "values") {
                    if (!sv.is_array()) throw DomainError(skey, "expected an array");
                    cfg.values.clear();
                    for (const auto& x : sv) cfg.values.push_back(detail::json_number(x, skey));
                } else {
                    throw DomainError(skey, "unknown key");
                }
            });
        } else if (k == "grid") {
            cfg.grid = detail::json_int(v, key);
        } else if (k == "resolution") {
            cfg.resolution = detail::json_number(v, key);
        } else if (k == "out") {
            cfg.out = detail::json_string(v, key);
        } else if (k == "svg") {
            cfg.svg = detail::json_string(v, key);
        } else {
            throw DomainError(key, "unknown key");
        }
    });
    cfg.validate();
    return cfg;
}

}  // namespace ringpursuit
