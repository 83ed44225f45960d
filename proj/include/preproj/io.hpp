#ifndef PREPROJ_IO_HPP
#define PREPROJ_IO_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "cyclotomic.hpp"
#include "diagnose.hpp"
#include "errors.hpp"
#include "fixedring.hpp"
#include "molien.hpp"
#include "quiver.hpp"
#include "trace.hpp"

namespace preproj {

using Json = nlohmann::ordered_json;

inline constexpr const char* report_schema = "preproj-report/1";
inline constexpr const char* presentation_schema = "preproj-presentation/1";

struct JobOptions {
    std::optional<std::size_t> truncation;
    std::size_t group_cap = 10000;
    std::optional<int> generator_bound;
    bool factored = true;
};

struct JobSpec {
    CycleQuiver quiver{3};
    std::vector<DiagonalAut> generators;
    JobOptions options;

    int n() const { return quiver.n(); }
    AutGroup group() const {
        if (generators.empty()) return generate_group({DiagonalAut::identity(n())}, options.group_cap);
        return generate_group(generators, options.group_cap);
    }
};

namespace detail {

inline const Json& require(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field \"" + key + "\"");
    return j.at(key);
}

inline long require_integer(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
    return j.get<long>();
}

inline std::size_t require_positive(const Json& j, const std::string& where) {
    long v = require_integer(j, where);
    if (v < 0) throw InputError(where + ": expected a nonnegative integer");
    return static_cast<std::size_t>(v);
}

inline std::vector<CycNum> scalar_list(const Json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where + ": expected an array of scalar strings");
    std::vector<CycNum> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string here = where + "[" + std::to_string(i) + "]";
        if (!j[i].is_string()) throw InputError(here + ": scalars must be strings in the cyclotomic grammar");
        try {
            out.push_back(cyc_parse(j[i].get<std::string>()));
        } catch (const ParseError& e) {
            throw ParseError(e.position(), here + " \"" + j[i].get<std::string>() + "\": " + e.message());
        }
    }
    return out;
}

}  // namespace detail

inline JobSpec parse_job(const Json& j) {
    if (!j.is_object()) throw InputError("job: expected a JSON object");
    JobSpec job;
    const Json& q = detail::require(j, "quiver", "job");
    const Json& fam = detail::require(q, "family", "quiver");
    if (!fam.is_string() || fam.get<std::string>() != "A_tilde")
        throw InputError("quiver.family: only \"A_tilde\" is supported");
    const long n = detail::require_integer(detail::require(q, "n", "quiver"), "quiver.n");
    if (n < 3) throw InputError("quiver.n: the cycle needs at least 3 vertices");
    job.quiver = make_cycle_quiver(static_cast<int>(n));
    if (j.contains("generators")) {
        const Json& gens = j.at("generators");
        if (!gens.is_array()) throw InputError("generators: expected an array");
        for (std::size_t g = 0; g < gens.size(); ++g) {
            const std::string where = "generators[" + std::to_string(g) + "]";
            auto c = detail::scalar_list(detail::require(gens[g], "c", where), where + ".c");
            auto t = detail::scalar_list(detail::require(gens[g], "t", where), where + ".t");
            try {
                job.generators.push_back(make_aut(job.quiver, std::move(c), std::move(t)));
            } catch (const InvalidAutomorphismError& e) {
                throw InvalidAutomorphismError(where + ": " + e.what(), e.first_index(), e.second_index());
            } catch (const DimensionMismatchError& e) {
                throw InputError(where + ": " + e.what());
            }
        }
    }
    if (j.contains("options")) {
        const Json& o = j.at("options");
        if (!o.is_object()) throw InputError("options: expected an object");
        if (o.contains("truncation")) job.options.truncation = detail::require_positive(o.at("truncation"), "options.truncation");
        if (o.contains("group_cap")) job.options.group_cap = detail::require_positive(o.at("group_cap"), "options.group_cap");
        if (o.contains("generator_bound"))
            job.options.generator_bound =
                static_cast<int>(detail::require_positive(o.at("generator_bound"), "options.generator_bound"));
        if (o.contains("factored")) {
            if (!o.at("factored").is_boolean()) throw InputError("options.factored: expected a boolean");
            job.options.factored = o.at("factored").get<bool>();
        }
    }
    return job;
}

inline Json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(e.byte, what + " is not valid JSON");
    }
}

inline JobSpec parse_job_text(const std::string& text) { return parse_job(parse_json_text(text, "job")); }

// ---------------------------------------------------------------------------
// Presentation files

inline Json presentation_to_json(const Presentation& p) {
    Json j;
    j["schema"] = presentation_schema;
    j["vertices"] = p.n;
    j["generators"] = Json::array();
    j["order"] = Json::array();
    for (const auto& g : p.generators) {
        j["generators"].push_back({{"label", g.label},
                                   {"start", g.path.start},
                                   {"end", g.path.end(p.n)},
                                   {"degree", g.path.degree()},
                                   {"type", {g.path.m, g.path.k}}});
        j["order"].push_back(g.label);
    }
    j["relations"] = Json::array();
    auto labels = [&](const Word& w) {
        Json a = Json::array();
        for (int g : w) a.push_back(p.generators[static_cast<std::size_t>(g)].label);
        return a;
    };
    for (const auto& r : p.relations) j["relations"].push_back({{"lhs", labels(r.lhs)}, {"rhs", labels(r.rhs)}});
    return j;
}

// The optional "type" field [m, k] pins the underlying path; without it the
// path must be the only one with the given start, end and degree.
inline Presentation presentation_from_json(const Json& j) {
    Presentation p;
    const long n = detail::require_integer(detail::require(j, "vertices", "presentation"), "vertices");
    if (n < 3) throw InputError("vertices: the cycle needs at least 3 vertices");
    p.n = static_cast<int>(n);
    const Json& gens = detail::require(j, "generators", "presentation");
    if (!gens.is_array()) throw InputError("generators: expected an array");
    std::vector<PresGenerator> listed;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        const std::string where = "generators[" + std::to_string(g) + "]";
        const Json& label = detail::require(gens[g], "label", where);
        if (!label.is_string() || label.get<std::string>().empty()) throw InputError(where + ".label: expected a string");
        const long start = detail::require_integer(detail::require(gens[g], "start", where), where + ".start");
        const long end = detail::require_integer(detail::require(gens[g], "end", where), where + ".end");
        const long degree = detail::require_integer(detail::require(gens[g], "degree", where), where + ".degree");
        if (start < 1 || start > n || end < 1 || end > n) throw InputError(where + ": vertex out of range");
        if (degree < 1) throw InputError(where + ".degree: must be positive");
        std::vector<SimplePath> candidates;
        for (long k = 0; k <= degree; ++k) {
            SimplePath path{static_cast<int>(start), static_cast<int>(degree - k), static_cast<int>(k)};
            if (path.end(p.n) == end) candidates.push_back(path);
        }
        SimplePath chosen;
        if (gens[g].contains("type")) {
            const Json& ty = gens[g].at("type");
            if (!ty.is_array() || ty.size() != 2) throw InputError(where + ".type: expected [m, k]");
            SimplePath path{static_cast<int>(start), static_cast<int>(detail::require_integer(ty[0], where + ".type")),
                            static_cast<int>(detail::require_integer(ty[1], where + ".type"))};
            if (path.m < 0 || path.k < 0 || path.degree() != degree || path.end(p.n) != end)
                throw InputError(where + ".type: inconsistent with start, end and degree");
            chosen = path;
        } else if (candidates.size() == 1) {
            chosen = candidates.front();
        } else {
            throw InputError(where + ": start, end and degree fit " + std::to_string(candidates.size()) +
                             " paths; give \"type\": [m, k]");
        }
        listed.push_back({label.get<std::string>(), chosen});
    }
    if (j.contains("order")) {
        const Json& order = j.at("order");
        if (!order.is_array() || order.size() != listed.size())
            throw InputError("order: must list every generator label exactly once");
        for (std::size_t r = 0; r < order.size(); ++r) {
            if (!order[r].is_string()) throw InputError("order: labels must be strings");
            auto it = std::find_if(listed.begin(), listed.end(),
                                   [&](const PresGenerator& g) { return g.label == order[r].get<std::string>(); });
            if (it == listed.end()) throw InputError("order: unknown label \"" + order[r].get<std::string>() + "\"");
            p.generators.push_back(*it);
        }
    } else {
        p.generators = listed;
    }
    std::set<std::string> seen;
    for (const auto& g : p.generators)
        if (!seen.insert(g.label).second) throw InputError("generator label \"" + g.label + "\" is used twice");
    if (j.contains("relations")) {
        const Json& rels = j.at("relations");
        if (!rels.is_array()) throw InputError("relations: expected an array");
        for (std::size_t r = 0; r < rels.size(); ++r) {
            const std::string where = "relations[" + std::to_string(r) + "]";
            auto side = [&](const char* key) {
                const Json& a = detail::require(rels[r], key, where);
                if (!a.is_array() || a.empty()) throw InputError(where + "." + key + ": expected a nonempty label list");
                Word w;
                for (const auto& l : a) {
                    if (!l.is_string()) throw InputError(where + "." + key + ": labels must be strings");
                    auto idx = p.index_of(l.get<std::string>());
                    if (!idx) throw InputError(where + "." + key + ": unknown label \"" + l.get<std::string>() + "\"");
                    w.push_back(*idx);
                }
                return w;
            };
            p.relations.push_back({side("lhs"), side("rhs")});
        }
    }
    try {
        normalize_relations(p);
    } catch (const PreconditionError& e) {
        throw InputError(std::string("presentation: ") + e.what());
    }
    return p;
}

// ---------------------------------------------------------------------------
// Reports

inline std::string show(const RatFun& f, bool factored) { return f.to_string(factored); }

inline Json rat_vector_json(const std::vector<RatFun>& v, bool factored) {
    Json a = Json::array();
    for (const auto& e : v) a.push_back(show(e, factored));
    return a;
}

inline Json rat_matrix_json(const RatMatrix& m, bool factored) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(show(m(i, j), factored));
        a.push_back(std::move(row));
    }
    return a;
}

inline Json report_header(const char* command) {
    Json j;
    j["schema"] = report_schema;
    j["command"] = command;
    return j;
}

inline Json trace_json(const TraceReport& r, bool factored) {
    Json j = report_header("trace");
    j["total"] = show(r.total, factored);
    j["vector"] = rat_vector_json(r.vector, factored);
    j["raw_p"] = r.raw_p.to_string();
    j["raw_q"] = r.raw_q.to_string();
    j["pole_order_at_one"] = r.pole_order_one;
    if (r.q_roots_unity)
        j["denominator_roots_of_unity"] = *r.q_roots_unity;
    else
        j["denominator_roots_of_unity"] = nullptr;
    j["oracle_degree"] = r.oracle_checked ? Json(r.oracle_degree) : Json(nullptr);
    return j;
}

inline Json molien_json(const MolienReport& r, bool factored) {
    Json j = report_header("molien");
    j["group_order"] = r.group_order;
    j["scalar"] = show(r.scalar, factored);
    j["vector"] = rat_vector_json(r.vector, factored);
    Json m;
    m["status"] = to_string(r.matrix.status);
    m["method"] = to_string(r.matrix.method);
    m["truncation"] = r.matrix.degree;
    m["denominator"] = r.matrix.denominator.to_string();
    if (r.matrix.matrix) {
        m["entries"] = rat_matrix_json(*r.matrix.matrix, factored);
    } else {
        m["reason"] = r.matrix.reason;
        Json series = Json::array();
        for (const auto& row : r.matrix.series) {
            Json jr = Json::array();
            for (const auto& s : row) {
                Json cs = Json::array();
                for (const auto& c : s.coeffs) cs.push_back(c.to_string());
                jr.push_back(std::move(cs));
            }
            series.push_back(std::move(jr));
        }
        m["series"] = std::move(series);
    }
    j["matrix"] = std::move(m);
    return j;
}

inline Json diagnosis_json(const DiagnosisReport& r, bool factored) {
    Json j = report_header("diagnose");
    j["verdict"] = to_string(r.verdict);
    j["freeness_cofactor"] = r.freeness_cofactor ? Json(r.freeness_cofactor->to_string()) : Json("none");
    j["P"] = r.P ? rat_matrix_json(*r.P, factored) : Json(nullptr);
    j["molien_scalar"] = show(r.molien.scalar, factored);
    j["matrix_status"] = to_string(r.molien.matrix.status);
    j["notes"] = r.notes;
    return j;
}

inline Json presentation_check_json(const Presentation& p, const PresentationCheck& c, bool factored) {
    Json j;
    j["passed"] = c.passed();
    j["generators_fixed"] = c.generators_fixed;
    j["ambiguities_resolve"] = c.ambiguities_resolve;
    auto amb = [&](const std::vector<Ambiguity>& list) {
        Json a = Json::array();
        for (const auto& x : list)
            a.push_back({{"kind", x.kind == Ambiguity::Kind::Overlap ? "overlap" : "inclusion"},
                         {"word", p.word_string(x.word)},
                         {"left", x.left ? Json(p.word_string(*x.left)) : Json(nullptr)},
                         {"right", x.right ? Json(p.word_string(*x.right)) : Json(nullptr)}});
        return a;
    };
    j["resolved_ambiguities"] = amb(c.ambiguities.resolvable);
    j["unresolved_ambiguities"] = amb(c.ambiguities.unresolvable);
    j["word_count"] = show(c.counts.total, factored);
    j["word_count_vector"] = rat_vector_json(c.counts.vector, factored);
    j["total_matches"] = c.total_matches;
    j["vector_matches"] = c.vector_matches;
    j["matrix_matches"] = c.matrix_matches ? Json(*c.matrix_matches) : Json(nullptr);
    j["notes"] = c.notes;
    return j;
}

inline Json fixed_ring_json(const FixedRingReport& r, bool factored) {
    Json j = report_header("fixed-ring");
    const int n = r.presentation.n;
    Json gens = Json::array();
    for (const auto& g : r.generators.generators)
        gens.push_back({{"label", g.label},
                        {"start", g.path.start},
                        {"end", g.path.end(n)},
                        {"degree", g.degree},
                        {"purity", to_string(g.purity)}});
    j["generators"] = std::move(gens);
    j["generator_count_with_idempotents"] = r.generators.count_with_idempotents(n);
    j["generator_bound"] = r.generators.degree_bound;
    j["generators_complete"] = r.generator_check.complete;
    j["first_failing_degree"] = r.generator_check.first_failing_degree ? Json(*r.generator_check.first_failing_degree) : Json(nullptr);
    j["warnings"] = r.generators.warnings;
    j["relation_degree"] = r.relation_degree;
    Json rels = Json::array();
    for (const auto& rel : r.presentation.relations)
        rels.push_back({{"lhs", r.presentation.word_string(rel.lhs)}, {"rhs", r.presentation.word_string(rel.rhs)}});
    j["relations"] = std::move(rels);
    j["verification"] = r.check ? presentation_check_json(r.presentation, *r.check, factored) : Json(nullptr);
    return j;
}

}  // namespace preproj

#endif  // PREPROJ_IO_HPP
