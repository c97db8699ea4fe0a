#include "pwinterp/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "pwinterp/error.hpp"
#include "pwinterp/reports.hpp"

namespace pwinterp {
namespace {

using nlohmann::json;

std::string item(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string member(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void require_object(const json& v, const std::string& path) {
    if (!v.is_object()) throw ConfigError(path, "expected an object");
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) throw ConfigError(member(path, key), "unknown field");
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path, "expected a number");
    const double out = v.get<double>();
    if (!std::isfinite(out)) throw ConfigError(path, "must be finite");
    return out;
}

double positive(const json& v, const std::string& path) {
    const double out = number(v, path);
    if (!(out > 0.0)) throw ConfigError(path, "must be positive");
    return out;
}

long integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
    return v.get<long>();
}

bool boolean(const json& v, const std::string& path) {
    if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
    return v.get<bool>();
}

std::string text(const json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigError(path, "expected a string");
    return v.get<std::string>();
}

std::vector<double> numbers(const json& v, const std::string& path) {
    if (!v.is_array()) throw ConfigError(path, "expected an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], item(path, i)));
    return out;
}

PWSignal parse_signal(const json& v, const std::string& path) {
    require_object(v, path);
    if (!v.contains("name")) throw ConfigError(member(path, "name"), "missing");
    const std::string name = text(v["name"], member(path, "name"));
    try {
        if (name == "sinc") {
            reject_unknown(v, path, {"name", "shift", "bandwidth"});
            const double shift = v.contains("shift") ? number(v["shift"], member(path, "shift")) : 0.0;
            const double b = v.contains("bandwidth") ? number(v["bandwidth"], member(path, "bandwidth")) : 1.0;
            return sinc_signal(shift, b);
        }
        if (name == "zero") {
            reject_unknown(v, path, {"name"});
            return zero_signal();
        }
        if (name == "triangle") {
            reject_unknown(v, path, {"name"});
            return triangle_signal();
        }
        if (name == "edge") {
            reject_unknown(v, path, {"name", "width"});
            if (!v.contains("width")) throw ConfigError(member(path, "width"), "missing");
            return edge_signal(number(v["width"], member(path, "width")));
        }
        if (name == "piecewise") {
            reject_unknown(v, path, {"name", "pieces"});
            const std::string list = member(path, "pieces");
            if (!v.contains("pieces") || !v["pieces"].is_array()) throw ConfigError(list, "expected an array");
            std::vector<SpectrumPiece> pieces;
            for (std::size_t i = 0; i < v["pieces"].size(); ++i) {
                const auto& p = v["pieces"][i];
                const std::string at = item(list, i);
                require_object(p, at);
                reject_unknown(p, at, {"interval", "coefficients"});
                if (!p.contains("interval")) throw ConfigError(member(at, "interval"), "missing");
                const auto interval = numbers(p["interval"], member(at, "interval"));
                if (interval.size() != 2) throw ConfigError(member(at, "interval"), "expected [lower, upper]");
                if (!p.contains("coefficients")) throw ConfigError(member(at, "coefficients"), "missing");
                pieces.push_back({interval[0], interval[1], numbers(p["coefficients"], member(at, "coefficients"))});
            }
            return spectral_signal(std::move(pieces));
        }
        if (name == "combination") {
            reject_unknown(v, path, {"name", "terms"});
            const std::string list = member(path, "terms");
            if (!v.contains("terms") || !v["terms"].is_array() || v["terms"].empty())
                throw ConfigError(list, "expected a non-empty array");
            std::vector<std::pair<double, PWSignal>> terms;
            for (std::size_t i = 0; i < v["terms"].size(); ++i) {
                const auto& t = v["terms"][i];
                const std::string at = item(list, i);
                require_object(t, at);
                reject_unknown(t, at, {"weight", "signal"});
                if (!t.contains("signal")) throw ConfigError(member(at, "signal"), "missing");
                const double w = t.contains("weight") ? number(t["weight"], member(at, "weight")) : 1.0;
                terms.emplace_back(w, parse_signal(t["signal"], member(at, "signal")));
            }
            return combine(std::move(terms));
        }
    } catch (const DomainError& e) {
        throw ConfigError(path, e.what());
    }
    throw ConfigError(member(path, "name"), "unknown signal '" + name + "'");
}

NodeSequence parse_nodes(const json& v) {
    const std::string path = "nodes";
    require_object(v, path);
    reject_unknown(v, path, {"half_width", "perturbation_bound", "deltas", "seed"});
    if (!v.contains("half_width")) throw ConfigError("nodes.half_width", "missing");
    const long n = integer(v["half_width"], "nodes.half_width");
    if (n < 1 || n > 100000) throw ConfigError("nodes.half_width", "must lie in [1, 100000]");
    const double bound = v.contains("perturbation_bound") ? number(v["perturbation_bound"], "nodes.perturbation_bound") : 0.0;
    if (!(bound >= 0.0 && bound < 0.25)) throw ConfigError("nodes.perturbation_bound", "must lie in [0, 1/4)");
    if (v.contains("deltas") && v.contains("seed")) throw ConfigError("nodes", "give either deltas or seed, not both");
    const int half = static_cast<int>(n);
    if (v.contains("deltas")) {
        const auto deltas = numbers(v["deltas"], "nodes.deltas");
        if (deltas.size() != 2 * static_cast<std::size_t>(half) + 1)
            throw ConfigError("nodes.deltas", "expected " + std::to_string(2 * half + 1) + " entries");
        for (std::size_t i = 0; i < deltas.size(); ++i)
            if (!(std::abs(deltas[i]) <= bound))
                throw ConfigError(item("nodes.deltas", i), "exceeds the perturbation bound (node index " +
                                                               std::to_string(static_cast<long>(i) - half) + ")");
        return perturbed_sequence(half, bound, deltas);
    }
    if (v.contains("seed")) {
        if (!v["seed"].is_number_unsigned()) throw ConfigError("nodes.seed", "expected a non-negative integer");
        return perturbed_sequence(half, bound, v["seed"].get<std::uint64_t>());
    }
    if (bound != 0.0) throw ConfigError("nodes", "a positive perturbation bound needs deltas or a seed");
    return integer_sequence(half);
}

std::string output_dir(const ExperimentConfig& config, const RunOptions& options) {
    return options.out_dir ? *options.out_dir : config.output_directory;
}

std::string join(const std::string& dir, const char* name) { return (std::filesystem::path(dir) / name).string(); }

std::ostream& log_of(const RunOptions& options) { return options.log ? *options.log : std::cerr; }

const NodeSequence& need_nodes(const ExperimentConfig& config) {
    if (!config.nodes) throw ConfigError("nodes", "required for this command");
    return *config.nodes;
}

const PWSignal& need_signal(const ExperimentConfig& config) {
    if (!config.signal) throw ConfigError("signal", "required for this command");
    return *config.signal;
}

json plan_echo(const ExperimentConfig& config) {
    json doc{{"kernel", config.kernel}, {"ladder", config.ladder}};
    if (config.nodes) doc["nodes"] = to_json(*config.nodes);
    if (config.signal) doc["signal"] = config.signal_spec;
    return doc;
}

}  // namespace

std::vector<double> default_ladder(std::string_view kernel) {
    if (kernel == "poisson") return {1, 2, 4, 8, 16};
    if (kernel == "multiquadric") return {1, 2, 3};
    if (kernel == "gaussian") return {1, 2, 4, 8};
    if (kernel == "cosine_modulated_poisson") return {1, 2, 4};
    throw DomainError("no default ladder for '" + std::string(kernel) + "'");
}

ExperimentConfig parse_config(const json& doc) {
    require_object(doc, "");
    reject_unknown(doc, "", {"kernel", "nodes", "signal", "probe", "tolerances", "sweep", "output"});
    ExperimentConfig config;

    if (!doc.contains("kernel")) throw ConfigError("kernel", "missing");
    const json& k = doc["kernel"];
    require_object(k, "kernel");
    reject_unknown(k, "kernel", {"name", "ladder", "alpha"});
    if (!k.contains("name")) throw ConfigError("kernel.name", "missing");
    config.kernel = text(k["name"], "kernel.name");
    const auto names = family_names();
    if (std::find(names.begin(), names.end(), config.kernel) == names.end())
        throw ConfigError("kernel.name", "unknown kernel family '" + config.kernel + "'");
    const KernelHandle family = make_family(config.kernel);
    config.ladder = k.contains("ladder") ? numbers(k["ladder"], "kernel.ladder") : default_ladder(config.kernel);
    if (config.ladder.empty()) throw ConfigError("kernel.ladder", "must not be empty");
    for (std::size_t i = 0; i < config.ladder.size(); ++i) {
        if (!family->parameter_domain().contains(config.ladder[i]))
            throw ConfigError(item("kernel.ladder", i), "outside the domain of " + config.kernel);
        if (i > 0 && !(config.ladder[i] > config.ladder[i - 1]))
            throw ConfigError(item("kernel.ladder", i), "ladder must be strictly increasing");
    }
    config.alpha = config.ladder.front();
    if (k.contains("alpha")) {
        config.alpha = number(k["alpha"], "kernel.alpha");
        if (!family->parameter_domain().contains(config.alpha))
            throw ConfigError("kernel.alpha", "outside the domain of " + config.kernel);
    }

    if (doc.contains("nodes")) {
        try {
            config.nodes = parse_nodes(doc["nodes"]);
        } catch (const DomainError& e) {
            throw ConfigError("nodes", e.what());
        }
    }
    if (doc.contains("signal")) {
        config.signal = parse_signal(doc["signal"], "signal");
        config.signal_spec = doc["signal"];
    }

    if (doc.contains("probe")) {
        const json& p = doc["probe"];
        require_object(p, "probe");
        reject_unknown(p, "probe", {"step", "interior_fraction", "dense_step"});
        if (p.contains("step")) config.probe_step = positive(p["step"], "probe.step");
        if (p.contains("dense_step")) config.dense_step = positive(p["dense_step"], "probe.dense_step");
        if (p.contains("interior_fraction")) {
            config.interior_fraction = number(p["interior_fraction"], "probe.interior_fraction");
            if (!(config.interior_fraction > 0.0 && config.interior_fraction <= 1.0))
                throw ConfigError("probe.interior_fraction", "must lie in (0, 1]");
        }
    }

    if (doc.contains("tolerances")) {
        const json& t = doc["tolerances"];
        require_object(t, "tolerances");
        reject_unknown(t, "tolerances",
                       {"residual", "condition_limit", "max_refinements", "h2_limit", "h3_threshold", "grid_points",
                        "h3_points", "certify_bands", "j_max", "tail_rel_tol"});
        if (t.contains("residual")) config.solve.residual_tolerance = positive(t["residual"], "tolerances.residual");
        if (t.contains("condition_limit"))
            config.solve.condition_limit = positive(t["condition_limit"], "tolerances.condition_limit");
        if (t.contains("max_refinements")) {
            const long r = integer(t["max_refinements"], "tolerances.max_refinements");
            if (r < 1 || r > 1000) throw ConfigError("tolerances.max_refinements", "must lie in [1, 1000]");
            config.solve.max_refinements = static_cast<int>(r);
        }
        if (t.contains("h2_limit")) config.certify.h2_limit = positive(t["h2_limit"], "tolerances.h2_limit");
        if (t.contains("h3_threshold"))
            config.certify.h3_threshold = positive(t["h3_threshold"], "tolerances.h3_threshold");
        if (t.contains("tail_rel_tol"))
            config.certify.tail_rel_tol = positive(t["tail_rel_tol"], "tolerances.tail_rel_tol");
        const auto bounded = [&](const char* key, long lo, long hi, auto& target) {
            if (!t.contains(key)) return;
            const std::string path = member("tolerances", key);
            const long v = integer(t[key], path);
            if (v < lo || v > hi)
                throw ConfigError(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
            target = static_cast<std::remove_reference_t<decltype(target)>>(v);
        };
        bounded("grid_points", 2, 1000000, config.certify.grid_points);
        bounded("h3_points", 1, 1000000, config.certify.h3_points);
        bounded("certify_bands", 1, 100000, config.certify.certify_bands);
        bounded("j_max", 1, 100000000, config.certify.j_max);
    }

    if (doc.contains("sweep")) {
        const json& s = doc["sweep"];
        require_object(s, "sweep");
        reject_unknown(s, "sweep", {"measure_truncation", "truncation_factor", "stability_factor"});
        if (s.contains("measure_truncation"))
            config.measure_truncation = boolean(s["measure_truncation"], "sweep.measure_truncation");
        if (s.contains("truncation_factor"))
            config.truncation_factor = positive(s["truncation_factor"], "sweep.truncation_factor");
        if (s.contains("stability_factor"))
            config.stability_factor = positive(s["stability_factor"], "sweep.stability_factor");
    }

    if (doc.contains("output")) {
        const json& o = doc["output"];
        require_object(o, "output");
        reject_unknown(o, "output", {"directory"});
        if (o.contains("directory")) config.output_directory = text(o["directory"], "output.directory");
    }
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string body = buffer.str();
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, body.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (body[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ConfigError("", path + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + e.what());
    }
    return parse_config(doc);
}

int cmd_certify(const ExperimentConfig& config, const RunOptions& options) {
    const KernelHandle kernel = make_family(config.kernel);
    const HypothesisReport report = certify_family(*kernel, config.ladder, config.certify);
    const std::string dir = output_dir(config, options);
    json doc = to_json(report);
    doc["plan"] = plan_echo(config);
    write_file_atomic(join(dir, "certify.json"), doc.dump(2) + "\n");
    write_file_atomic(join(dir, "certify.csv"), to_csv(report));

    auto& log = log_of(options);
    if (options.verbose) {
        log << "kernel " << report.kernel << ", H2 constant " << format_number(report.h2_constant) << "\n";
        for (const auto& note : report.notes) log << "  " << note << "\n";
    }
    log << "A1 " << to_string(report.a1) << "  A2 " << to_string(report.a2) << "  A3 " << to_string(report.a3)
        << "  H1 " << to_string(report.h1) << "  H2 " << to_string(report.h2) << "  H3 " << to_string(report.h3)
        << "  => " << to_string(report.overall()) << "\n";
    switch (report.overall()) {
        case Verdict::Pass: return kExitSuccess;
        case Verdict::Fail: return kExitFail;
        case Verdict::Indeterminate: return kExitNumerical;
    }
    return kExitNumerical;
}

int cmd_reconstruct(const ExperimentConfig& config, const RunOptions& options) {
    const NodeSequence& nodes = need_nodes(config);
    const PWSignal& signal = need_signal(config);
    const KernelHandle kernel = make_family(config.kernel);
    auto& log = log_of(options);

    const RieszBounds riesz = riesz_bounds(nodes);
    if (!riesz.usable) throw NumericalError("node window unusable: Riesz lower bound " + format_number(riesz.lower));
    const SampleSet samples = sample(signal, nodes, riesz);
    const InterpolantModel model = interpolate(nodes, kernel, config.alpha, samples.values, config.solve);
    if (model.ill_conditioned())
        log << "warning: ill_conditioned (condition estimate " << format_number(model.condition_estimate()) << ")\n";

    const std::string dir = output_dir(config, options);

    std::ostringstream node_csv;
    node_csv << "index,x,sample,interpolant,residual\n";
    const auto at_nodes = evaluate_interpolant(model, nodes.nodes());
    double node_residual = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const double r = std::abs(at_nodes[k] - samples.values[k]);
        node_residual = std::max(node_residual, r);
        node_csv << static_cast<long>(k) - nodes.half_width() << ',' << format_number(nodes.nodes()[k]) << ','
                 << format_number(samples.values[k]) << ',' << format_number(at_nodes[k]) << ',' << format_number(r)
                 << '\n';
    }

    std::ostringstream dense_csv;
    dense_csv << "x,f,interpolant,abs_diff\n";
    const auto dense = probe_grid(nodes, config.dense_step, 1.0);
    const auto dense_values = evaluate_interpolant(model, dense);
    for (std::size_t i = 0; i < dense.size(); ++i) {
        const double f = signal.real_value(dense[i]);
        dense_csv << format_number(dense[i]) << ',' << format_number(f) << ',' << format_number(dense_values[i]) << ','
                  << format_number(std::abs(f - dense_values[i])) << '\n';
    }

    const auto interior = probe_grid(nodes, config.probe_step, config.interior_fraction);
    const auto full = probe_grid(nodes, config.probe_step, 1.0);
    json summary{{"kernel", config.kernel},
                 {"alpha", config.alpha},
                 {"half_width", nodes.half_width()},
                 {"signal", config.signal_spec},
                 {"solve_residual", model.solve_residual()},
                 {"node_residual", node_residual},
                 {"condition_estimate", model.condition_estimate()},
                 {"flags", model.ill_conditioned() ? "ill_conditioned" : ""},
                 {"coefficient_norm", model.coefficient_norm()},
                 {"sup_error_interior", sup_error(signal, model, interior)},
                 {"sup_error_full", sup_error(signal, model, full)},
                 {"bound", t_alpha_bound(signal, *kernel, config.alpha)},
                 {"riesz_lower", riesz.lower},
                 {"riesz_upper", riesz.upper},
                 {"sample_l2_mass", samples.l2_mass},
                 {"sample_ceiling", samples.ceiling},
                 {"sample_within_ceiling", samples.within_ceiling}};

    write_file_atomic(join(dir, "nodes.json"), to_json(nodes).dump(2) + "\n");
    write_file_atomic(join(dir, "interpolant.json"), to_json(model, "nodes.json").dump(2) + "\n");
    write_file_atomic(join(dir, "node_errors.csv"), node_csv.str());
    write_file_atomic(join(dir, "evaluation.csv"), dense_csv.str());
    write_file_atomic(join(dir, "reconstruct.json"), summary.dump(2) + "\n");

    if (options.verbose)
        log << "reconstructed with " << nodes.size() << " nodes, node residual " << format_number(node_residual)
            << ", interior sup error " << format_number(summary["sup_error_interior"].get<double>()) << "\n";
    return kExitSuccess;
}

int cmd_sweep(const ExperimentConfig& config, const RunOptions& options) {
    const NodeSequence& nodes = need_nodes(config);
    const PWSignal& signal = need_signal(config);
    const KernelHandle kernel = make_family(config.kernel);

    SweepOptions sweep;
    sweep.probe_step = config.probe_step;
    sweep.interior_fraction = config.interior_fraction;
    sweep.solve = config.solve;
    sweep.measure_truncation = config.measure_truncation;
    sweep.truncation_factor = config.truncation_factor;
    sweep.stability_factor = config.stability_factor;
    sweep.threads = std::max(1, options.threads);
    const SweepResult result = convergence_sweep(signal, kernel, nodes, config.ladder, sweep);

    const std::string dir = output_dir(config, options);
    json doc = to_json(result);
    doc["plan"] = plan_echo(config);
    write_file_atomic(join(dir, "sweep.csv"), to_csv(result));
    write_file_atomic(join(dir, "sweep.json"), doc.dump(2) + "\n");

    if (options.verbose) {
        auto& log = log_of(options);
        for (const auto& r : result.records)
            log << "alpha " << format_number(r.alpha) << "  sup " << format_number(r.sup_error) << "  bound "
                << format_number(r.bound) << "  " << describe_flags(r.flags) << "\n";
        log << "C_fit " << format_number(result.c_fit) << "\n";
    }
    return kExitSuccess;
}

int run_command(std::string_view command, const std::string& config_path, const RunOptions& options) {
    auto& log = log_of(options);
    try {
        if (command != "certify" && command != "reconstruct" && command != "sweep")
            throw ConfigError("", "unknown command '" + std::string(command) + "'");
        const ExperimentConfig config = load_config(config_path);
        if (command == "certify") return cmd_certify(config, options);
        if (command == "reconstruct") return cmd_reconstruct(config, options);
        return cmd_sweep(config, options);
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace pwinterp
