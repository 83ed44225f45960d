#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "preproj/preproj.hpp"

namespace {

using preproj::Json;

enum Exit : int { Ok = 0, HardError = 1, Inconsistent = 2, Inconclusive = 3, Rejected = 4 };

struct Settings {
    std::string job_path = "-";
    std::optional<std::size_t> degree;
    std::optional<std::size_t> group_cap;
    std::optional<int> gen_bound;
    std::optional<int> relation_bound;
    bool json = false;
    bool factored_flag = false;
    bool expanded_flag = false;
    std::string presentation_path;
    std::string save_presentation;
};

std::string read_all(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path);
    if (!in) throw preproj::InputError("cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

preproj::JobSpec load_job(const Settings& s) {
    auto job = preproj::parse_job_text(read_all(s.job_path));
    if (s.group_cap) job.options.group_cap = *s.group_cap;
    if (s.gen_bound) job.options.generator_bound = *s.gen_bound;
    if (s.degree) job.options.truncation = *s.degree;
    if (s.factored_flag) job.options.factored = true;
    if (s.expanded_flag) job.options.factored = false;
    return job;
}

void print_vector(const char* name, const std::vector<preproj::RatFun>& v, bool factored) {
    for (std::size_t i = 0; i < v.size(); ++i)
        std::cout << name << "[" << i + 1 << "]: " << v[i].to_string(factored) << "\n";
}

void print_matrix(const preproj::RatMatrix& m, bool factored) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::cout << "  row " << i + 1 << ":";
        for (std::size_t j = 0; j < m.cols(); ++j) std::cout << (j ? ", " : " ") << m(i, j).to_string(factored);
        std::cout << "\n";
    }
}

void print_notes(const std::vector<std::string>& notes) {
    for (const auto& n : notes) std::cout << "note: " << n << "\n";
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_trace(const Settings& s) {
    auto job = load_job(s);
    if (job.generators.size() != 1)
        throw preproj::InputError("trace needs exactly one automorphism, the job lists " +
                                  std::to_string(job.generators.size()));
    const std::size_t D = job.options.truncation.value_or(std::max<std::size_t>(40, 2 * static_cast<std::size_t>(job.n())));
    auto rep = preproj::trace_report(job.generators.front(), D);
    const bool f = job.options.factored;
    if (s.json) {
        emit(preproj::trace_json(rep, f));
        return Ok;
    }
    std::cout << "total: " << rep.total.to_string(f) << "\n";
    print_vector("vector", rep.vector, f);
    std::cout << "raw p: " << rep.raw_p.to_string() << "\n"
              << "raw q: " << rep.raw_q.to_string() << "\n"
              << "pole order at 1: " << rep.pole_order_one << "\n"
              << "denominator roots are roots of unity: "
              << (rep.q_roots_unity ? (*rep.q_roots_unity ? "yes" : "no") : "unknown") << "\n"
              << "closed forms agree with the path-counting series through degree " << rep.oracle_degree << "\n";
    return Ok;
}

int cmd_hilbert(const Settings& s) {
    auto job = load_job(s);
    const int n = job.n();
    const bool f = job.options.factored;
    const auto total = preproj::hilbert_A(n);
    const auto vertex = preproj::hilbert_eA(n);
    const auto matrix = preproj::matrix_hilbert_A(n);
    if (s.json) {
        Json j = preproj::report_header("hilbert");
        j["vertices"] = n;
        j["total"] = preproj::show(total, f);
        j["vertex"] = preproj::show(vertex, f);
        j["matrix"] = preproj::rat_matrix_json(matrix, f);
        emit(j);
        return Ok;
    }
    std::cout << "total: " << total.to_string(f) << "\n"
              << "each e_i A: " << vertex.to_string(f) << "\n"
              << "matrix:\n";
    print_matrix(matrix, f);
    return Ok;
}

int cmd_molien(const Settings& s) {
    auto job = load_job(s);
    auto G = job.group();
    auto rep = preproj::molien_report(G, job.options.truncation);
    const bool f = job.options.factored;
    const int code = rep.matrix.matrix ? Ok : Inconclusive;
    if (s.json) {
        emit(preproj::molien_json(rep, f));
        return code;
    }
    std::cout << "group order: " << rep.group_order << "\n"
              << "scalar: " << rep.scalar.to_string(f) << "\n";
    print_vector("vector", rep.vector, f);
    std::cout << "matrix status: " << preproj::to_string(rep.matrix.status) << " (" << preproj::to_string(rep.matrix.method)
              << ", series checked through degree " << rep.matrix.degree << ")\n";
    if (rep.matrix.matrix)
        print_matrix(*rep.matrix.matrix, f);
    else
        std::cout << "reason: " << rep.matrix.reason << "\n";
    return code;
}

int cmd_diagnose(const Settings& s) {
    auto job = load_job(s);
    auto rep = preproj::diagnose_projectivity(job.group(), job.options.truncation);
    const bool f = job.options.factored;
    const int code = rep.verdict == preproj::Verdict::Inconclusive ? Inconclusive : Ok;
    if (s.json) {
        emit(preproj::diagnosis_json(rep, f));
        return code;
    }
    std::cout << "verdict: " << preproj::to_string(rep.verdict) << "\n"
              << "freeness cofactor: " << (rep.freeness_cofactor ? rep.freeness_cofactor->to_string() : "none") << "\n"
              << "molien scalar: " << rep.molien.scalar.to_string(f) << "\n";
    if (rep.P) {
        std::cout << "P:\n";
        print_matrix(*rep.P, f);
    }
    print_notes(rep.notes);
    return code;
}

void print_check(const preproj::Presentation& p, const preproj::PresentationCheck& c, bool f) {
    std::cout << "generators fixed: " << (c.generators_fixed ? "yes" : "no") << "\n"
              << "ambiguities: " << c.ambiguities.resolvable.size() << " resolve, " << c.ambiguities.unresolvable.size()
              << " do not\n";
    for (const auto& a : c.ambiguities.unresolvable)
        std::cout << "  unresolved at " << p.word_string(a.word) << ": "
                  << (a.left ? p.word_string(*a.left) : "?") << " vs " << (a.right ? p.word_string(*a.right) : "?") << "\n";
    std::cout << "irreducible word count: " << c.counts.total.to_string(f) << "\n"
              << "matches molien scalar: " << (c.total_matches ? "yes" : "no") << "\n"
              << "matches molien vector: " << (c.vector_matches ? "yes" : "no") << "\n"
              << "matches molien matrix: " << (c.matrix_matches ? (*c.matrix_matches ? "yes" : "no") : "unknown") << "\n";
    print_notes(c.notes);
    std::cout << "presentation verified: " << (c.passed() ? "yes" : "no") << "\n";
}

void save_presentation(const std::string& path, const preproj::Presentation& p) {
    std::ofstream out(path);
    if (!out) throw preproj::InputError("cannot write \"" + path + "\"");
    out << preproj::presentation_to_json(p).dump(2) << "\n";
}

int cmd_fixed_ring(const Settings& s) {
    auto job = load_job(s);
    auto rep = preproj::fixed_ring(job.group(), job.options.generator_bound, s.relation_bound);
    const bool f = job.options.factored;
    const int code = rep.check && rep.check->passed() ? Ok : Inconclusive;
    if (!s.save_presentation.empty()) save_presentation(s.save_presentation, rep.presentation);
    if (s.json) {
        emit(preproj::fixed_ring_json(rep, f));
        return code;
    }
    const int n = rep.presentation.n;
    std::cout << "generators (degree bound " << rep.generators.degree_bound << "):\n";
    for (const auto& g : rep.generators.generators)
        std::cout << "  " << g.label << ": " << g.path.start << " -> " << g.path.end(n) << ", degree " << g.degree << ", "
                  << preproj::to_string(g.purity) << "\n";
    std::cout << "generator count with idempotents: " << rep.generators.count_with_idempotents(n) << "\n";
    for (const auto& w : rep.generators.warnings) std::cout << "warning: " << w << "\n";
    std::cout << "generators complete through the bound: " << (rep.generator_check.complete ? "yes" : "no") << "\n";
    if (!rep.check) return code;
    std::cout << "relations (searched through degree " << rep.relation_degree << "):\n";
    for (const auto& r : rep.presentation.relations)
        std::cout << "  " << rep.presentation.word_string(r.lhs) << " = " << rep.presentation.word_string(r.rhs) << "\n";
    print_check(rep.presentation, *rep.check, f);
    return code;
}

int cmd_verify_presentation(const Settings& s) {
    auto job = load_job(s);
    auto p = preproj::presentation_from_json(preproj::parse_json_text(read_all(s.presentation_path), "presentation"));
    if (p.n != job.n())
        throw preproj::InputError("presentation has " + std::to_string(p.n) + " vertices, the job has " +
                                  std::to_string(job.n()));
    auto check = preproj::verify_presentation(p, job.group());
    const bool f = job.options.factored;
    const int code = check.passed() ? Ok : Rejected;
    if (s.json) {
        Json j = preproj::report_header("verify-presentation");
        j["verification"] = preproj::presentation_check_json(p, check, f);
        emit(j);
        return code;
    }
    print_check(p, check, f);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact invariant theory for preprojective algebras of cyclic quivers"};
    app.require_subcommand(1);
    Settings s;

    auto common = [&](CLI::App* sub) {
        sub->add_option("job", s.job_path, "job file, or - for standard input")->capture_default_str();
        sub->add_option("--group-cap", s.group_cap, "largest group that may be enumerated");
        sub->add_flag("--json", s.json, "emit a JSON report");
        auto* fa = sub->add_flag("--factored", s.factored_flag, "show denominators in factored form");
        auto* ex = sub->add_flag("--expanded", s.expanded_flag, "show denominators expanded");
        fa->excludes(ex);
        return sub;
    };

    auto* trace = common(app.add_subcommand("trace", "trace function of one automorphism"));
    trace->add_option("--degree", s.degree, "series degree used to cross-check the closed forms");
    auto* molien = common(app.add_subcommand("molien", "scalar, vector and matrix Molien series"));
    molien->add_option("--degree", s.degree, "series degree for the matrix reconstruction");
    common(app.add_subcommand("hilbert", "Hilbert series of the preprojective algebra"));
    auto* fixed = common(app.add_subcommand("fixed-ring", "generators and relations of the fixed ring"));
    fixed->add_option("--gen-bound", s.gen_bound, "degree bound for the generator search");
    fixed->add_option("--relation-bound", s.relation_bound, "degree bound for the relation search");
    fixed->add_option("--save-presentation", s.save_presentation, "write the discovered presentation to a file");
    auto* diag = common(app.add_subcommand("diagnose", "projectivity and freeness over the fixed ring"));
    diag->add_option("--degree", s.degree, "series degree for the matrix reconstruction");
    auto* verify = common(app.add_subcommand("verify-presentation", "check a presentation against the Molien series"));
    verify->add_option("--presentation", s.presentation_path, "presentation file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : HardError;
    }

    try {
        if (*trace) return cmd_trace(s);
        if (*molien) return cmd_molien(s);
        if (*fixed) return cmd_fixed_ring(s);
        if (*diag) return cmd_diagnose(s);
        if (*verify) return cmd_verify_presentation(s);
        return cmd_hilbert(s);
    } catch (const preproj::InternalInconsistencyError& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return Inconsistent;
    } catch (const preproj::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
    } catch (const preproj::InvalidAutomorphismError& e) {
        std::cerr << "invalid automorphism (indices " << e.first_index() << " and " << e.second_index() << "): " << e.what()
                  << "\n";
    } catch (const preproj::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return HardError;
}
