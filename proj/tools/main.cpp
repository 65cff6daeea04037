// Command-line front end: single-shot section computations, (n, t) sweeps
// with optional search certification, and the full verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or regime error.

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "crosssec/crosssec.hpp"

namespace {

using namespace crosssec;

Vec parse_coords(const std::string& text) {
    Vec out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            out.push_back(std::stod(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(std::stod(cur));
    if (out.empty()) throw std::invalid_argument("empty coordinate list");
    return out;
}

void require_size(const Vec& v, int n, const char* flag) {
    if (static_cast<int>(v.size()) != n)
        throw std::invalid_argument(std::string(flag) + " must have exactly " +
                                    std::to_string(n) + " comma-separated coordinates");
}

std::string vec_to_string(const Vec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += format_double(v[i]);
    }
    return s;
}

void print_result(const SectionResult& r) {
    std::cout << "value " << format_double(r.value) << "\n";
    std::cout << "method " << method_name(r.method) << "\n";
    std::cout << "tangent " << (r.tangent ? "true" : "false") << "\n";
    if (r.witness) {
        if (const auto* line = std::get_if<LineSpec>(&*r.witness)) {
            std::cout << "witness-base " << vec_to_string(line->base) << "\n";
            std::cout << "witness-dir " << vec_to_string(line->dir) << "\n";
        } else if (const auto* h = std::get_if<HyperplaneSpec>(&*r.witness)) {
            std::cout << "witness-normal " << vec_to_string(h->normal) << "\n";
            std::cout << "witness-offset " << format_double(h->offset) << "\n";
        }
    }
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("CROSSSEC_SEED")) return std::strtoull(env, nullptr, 10);
    return 42;
}

std::string current_timestamp() {
    if (const char* env = std::getenv("CROSSSEC_TIMESTAMP")) return env;
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

void write_or_print(const std::string& content, const std::string& path) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write to " + path);
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sections of the cross-polytope: exact values, closed-form extremes, "
                 "search and Monte Carlo certification"};
    app.set_version_flag("--version", std::string("crosssec ") + kToolVersion);
    app.require_subcommand(1);

    // ---- compute ----
    auto* compute = app.add_subcommand("compute", "evaluate a single section");
    compute->require_subcommand(1);

    struct ComputeArgs {
        int n = 3;
        std::string p1, p2, base, dir, normal, x, v;
        double t = 0.0;
    } ca;

    auto* line_cmd = compute->add_subcommand("line-length", "length of a line section");
    line_cmd->add_option("--n", ca.n, "ambient dimension")->required();
    line_cmd->add_option("--p1", ca.p1, "first point (comma-separated)");
    line_cmd->add_option("--p2", ca.p2, "second point");
    line_cmd->add_option("--base", ca.base, "point on the line");
    line_cmd->add_option("--dir", ca.dir, "direction (normalized internally)");

    auto add_normal_cmd = [&](const char* name, const char* help) {
        auto* c = compute->add_subcommand(name, help);
        c->add_option("--n", ca.n, "ambient dimension")->required();
        c->add_option("--normal", ca.normal, "unit normal (normalized internally)")->required();
        c->add_option("--t", ca.t, "distance / half-width")->required();
        return c;
    };
    auto* hyp_cmd = add_normal_cmd("hyp-volume", "volume of a hyperplane section");
    auto* slab_cmd = add_normal_cmd("slab-volume", "volume inside a symmetric slab");
    auto* chop_cmd = add_normal_cmd("chopped-volume", "volume cut off beyond the hyperplane");

    auto* simplex_cmd =
        compute->add_subcommand("simplex-chord", "central line section of the regular simplex");
    simplex_cmd->add_option("--n", ca.n, "ambient dimension")->required();
    simplex_cmd->add_option("--v", ca.v, "direction in the simplex hyperplane");
    simplex_cmd->add_option("--x", ca.x, "boundary point with last coordinate 0");

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "tabulate a quantity over (n, t)");
    std::string sw_quantity = "max-line", sw_format = "csv", sw_out, sw_config;
    SweepSpec spec;
    bool have_seed = false;
    sweep_cmd->add_option("--quantity", sw_quantity,
                          "max-line|min-line|max-hyp|min-slab|simplex-min|simplex-max");
    sweep_cmd->add_option("--n", spec.n_min, "dimension (or range start)");
    sweep_cmd->add_option("--n-max", spec.n_max, "range end (defaults to --n)");
    sweep_cmd->add_option("--t-start", spec.t_start, "first distance value");
    sweep_cmd->add_option("--t-stop", spec.t_stop, "last distance value");
    sweep_cmd->add_option("--t-step", spec.t_step, "grid step");
    sweep_cmd->add_flag("--certify", spec.certify, "run the search oracle per row");
    sweep_cmd->add_option("--format", sw_format, "csv|json");
    sweep_cmd->add_option("--starts", spec.search_starts, "search starts per row");
    sweep_cmd->add_option("--seed", spec.seed, "random seed")->each([&](const std::string&) {
        have_seed = true;
    });
    sweep_cmd->add_option("--config", sw_config, "key=value config file with sweep defaults");
    sweep_cmd->add_option("--out", sw_out, "output file (stdout when omitted)");

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand("verify", "run the certification suite");
    std::string vf_level = "quick", vf_json;
    std::uint64_t vf_seed = default_seed();
    verify_cmd->add_option("--level", vf_level, "quick|full");
    verify_cmd->add_option("--seed", vf_seed, "random seed");
    verify_cmd->add_option("--json", vf_json, "also write a JSON report to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 2;
    }

    try {
        if (line_cmd->parsed()) {
            LineSpec line;
            if (!ca.p1.empty() || !ca.p2.empty()) {
                if (ca.p1.empty() || ca.p2.empty())
                    throw std::invalid_argument("line-length needs both --p1 and --p2");
                Vec p1 = parse_coords(ca.p1), p2 = parse_coords(ca.p2);
                require_size(p1, ca.n, "--p1");
                require_size(p2, ca.n, "--p2");
                line = canonicalize_line(p1, p2);
            } else if (!ca.base.empty() && !ca.dir.empty()) {
                Vec base = parse_coords(ca.base), dir = parse_coords(ca.dir);
                require_size(base, ca.n, "--base");
                require_size(dir, ca.n, "--dir");
                line = canonicalize_line(LineSpec{base, normalized(dir)});
            } else {
                throw std::invalid_argument("line-length needs --p1/--p2 or --base/--dir");
            }
            print_result(line_section_length(line, ca.n));
            return 0;
        }
        if (hyp_cmd->parsed() || slab_cmd->parsed() || chop_cmd->parsed()) {
            Vec normal = parse_coords(ca.normal);
            require_size(normal, ca.n, "--normal");
            normal = normalized(normal);
            if (hyp_cmd->parsed()) {
                print_result(hyperplane_section_volume(HyperplaneSpec{normal, ca.t}, ca.n));
            } else if (slab_cmd->parsed()) {
                print_result(slab_volume(SlabSpec{normal, ca.t}, ca.n));
            } else {
                const double v = chopped_volume(
                    make_chopped_pyramid(HyperplaneSpec{normal, ca.t}, ca.n));
                std::cout << "value " << format_double(v) << "\n";
                std::cout << "method exact-geometry\n";
            }
            return 0;
        }
        if (simplex_cmd->parsed()) {
            if (!ca.v.empty() == !ca.x.empty())
                throw std::invalid_argument("simplex-chord needs exactly one of --v or --x");
            double value = 0.0;
            if (!ca.v.empty()) {
                Vec v = parse_coords(ca.v);
                require_size(v, ca.n, "--v");
                value = simplex_central_line_length(normalized(v), ca.n);
            } else {
                Vec x = parse_coords(ca.x);
                require_size(x, ca.n, "--x");
                value = simplex_chord_through_centroid(x, ca.n);
            }
            std::cout << "value " << format_double(value) << "\n";
            std::cout << "method exact-geometry\n";
            return 0;
        }
        if (sweep_cmd->parsed()) {
            bool n_max_given = sweep_cmd->count("--n-max") > 0;
            if (!sw_config.empty()) {
                const auto kv = parse_config_file(sw_config);
                auto get = [&](const char* key) -> const std::string* {
                    const auto it = kv.find(key);
                    return it == kv.end() ? nullptr : &it->second;
                };
                // config file provides defaults; explicit flags win
                if (const auto* v = get("quantity"); v && sweep_cmd->count("--quantity") == 0)
                    sw_quantity = *v;
                if (const auto* v = get("n"); v && sweep_cmd->count("--n") == 0)
                    spec.n_min = std::stoi(*v);
                if (const auto* v = get("n_max"); v && !n_max_given) {
                    spec.n_max = std::stoi(*v);
                    n_max_given = true;
                }
                if (const auto* v = get("t_start"); v && sweep_cmd->count("--t-start") == 0)
                    spec.t_start = std::stod(*v);
                if (const auto* v = get("t_stop"); v && sweep_cmd->count("--t-stop") == 0)
                    spec.t_stop = std::stod(*v);
                if (const auto* v = get("t_step"); v && sweep_cmd->count("--t-step") == 0)
                    spec.t_step = std::stod(*v);
                if (const auto* v = get("certify"); v && sweep_cmd->count("--certify") == 0)
                    spec.certify = (*v == "true" || *v == "1");
                if (const auto* v = get("seed"); v && !have_seed)
                    spec.seed = std::strtoull(v->c_str(), nullptr, 10);
                if (const auto* v = get("starts"); v && sweep_cmd->count("--starts") == 0)
                    spec.search_starts = std::stoi(*v);
            }
            if (!have_seed && std::getenv("CROSSSEC_SEED") != nullptr)
                spec.seed = default_seed();
            spec.quantity = parse_quantity(sw_quantity);
            if (!n_max_given) spec.n_max = spec.n_min;
            if (sw_format == "csv")
                spec.format = SweepSpec::Format::Csv;
            else if (sw_format == "json")
                spec.format = SweepSpec::Format::Json;
            else
                throw std::invalid_argument("--format must be csv or json");
            const SweepResult result = run_sweep(spec, kToolVersion, current_timestamp());
            write_or_print(spec.format == SweepSpec::Format::Csv ? emit_csv(result)
                                                                 : emit_json(result),
                           sw_out);
            return 0;
        }
        if (verify_cmd->parsed()) {
            const VerifyOptions opts = make_verify_options(vf_level, vf_seed);
            const VerifyReport report = run_verify(opts);
            std::cout << render_text(report);
            if (!vf_json.empty()) write_or_print(render_json(report), vf_json);
            return report.all_passed ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
