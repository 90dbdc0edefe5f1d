#include "bispinor/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace bispinor::cli {

namespace {

using io::json;

Command parse_command(const std::string& name) {
    if (name == "check") return Command::check;
    if (name == "solve") return Command::solve;
    if (name == "spectrum") return Command::spectrum;
    if (name == "roundtrip") return Command::roundtrip;
    if (name == "gen") return Command::gen;
    if (name == "transform") return Command::transform;
    throw InputError("unknown command '" + name + "'");
}

OutputFormat parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::json;
    if (name == "table") return OutputFormat::table;
    throw InputError("unknown format '" + name + "' (expected json or table)");
}

Vec3 vec3_from(const std::string& text, const std::string& what) {
    const auto v = io::parse_number_list(text, 3, what);
    return {v[0], v[1], v[2]};
}

RMat4 matrix_from(const std::vector<double>& v) {
    RMat4 m;
    for (int k = 0; k < 16; ++k) m(k / 4, k % 4) = v[k];
    return m;
}

template <typename T>
T config_value(const json& v, const std::string& key) {
    try {
        return v.get<T>();
    } catch (const json::exception&) {
        throw InputError("config: field '" + key + "' has the wrong type");
    }
}

// Emits one JSON document per line, or a table row.
class Printer {
public:
    Printer(std::ostream& out, OutputFormat format) : out_(out), format_(format) {}

    bool json_mode() const { return format_ == OutputFormat::json; }
    void emit(const json& value) { out_ << value.dump() << '\n'; }

    void header(const std::vector<std::string>& columns) {
        if (json_mode()) return;
        for (const auto& c : columns) out_ << std::setw(14) << c;
        out_ << '\n';
    }

    void row(const std::vector<std::string>& cells) {
        for (const auto& c : cells) out_ << std::setw(14) << c;
        out_ << '\n';
    }

private:
    std::ostream& out_;
    OutputFormat format_;
};

std::string num(double x) {
    std::ostringstream s;
    s << std::setprecision(6) << x;
    return s.str();
}

std::string error_of(const io::CorpusRow& row) { return std::get<std::string>(row.content); }
bool is_error(const io::CorpusRow& row) { return std::holds_alternative<std::string>(row.content); }

int cmd_report(const JobConfig& cfg, const io::Corpus& corpus, std::ostream& out, std::ostream& err, bool full) {
    const DiracRep rep = build_rep(cfg.rep);
    Printer p(out, cfg.format);
    p.header({"line", "feasible", "margin", "rank", "lambda_1", "lambda_4", "reason"});
    bool input_error = false, infeasible = false;
    for (const auto& row : corpus.rows) {
        if (is_error(row)) {
            err << error_of(row) << '\n';
            input_error = true;
            if (p.json_mode()) p.emit({{"line", row.line}, {"error", error_of(row)}});
            continue;
        }
        const TensorQuintuple q = std::get<io::QuintupleRecord>(row.content).local();
        const SpectrumReport r = spectrum_report(q, rep, cfg.tol);
        infeasible = infeasible || !r.feasibility.feasible;
        if (p.json_mode()) {
            json j = io::to_json(r);
            j["line"] = row.line;
            if (full) {
                j["M"] = io::matrix_to_json(build_M(q, rep).M, cfg.rep);
                j["local"] = io::to_json(q);
            }
            p.emit(j);
        } else {
            const Spectrum& lam = r.lambda_numeric ? *r.lambda_numeric : r.lambda_matrix;
            p.row({std::to_string(row.line), r.feasibility.feasible ? "yes" : "no", num(r.feasibility.margin),
                   std::to_string(r.feasibility.rank), num(lam[0]), num(lam[3]), r.feasibility.reason});
        }
    }
    if (input_error) return exit_code::input_error;
    if (infeasible && !full) return exit_code::infeasible;
    return exit_code::ok;
}

int cmd_solve(const JobConfig& cfg, const io::Corpus& corpus, std::ostream& out, std::ostream& err) {
    const DiracRep rep = build_rep(cfg.rep);
    std::optional<Rng> rng;
    if (cfg.seed) rng.emplace(*cfg.seed);
    Printer p(out, cfg.format);
    p.header({"line", "feasible", "margin", "rank", "classes", "residual"});
    bool input_error = false, infeasible = false;
    for (const auto& row : corpus.rows) {
        if (is_error(row)) {
            err << error_of(row) << '\n';
            input_error = true;
            if (p.json_mode()) p.emit({{"line", row.line}, {"error", error_of(row)}});
            continue;
        }
        const TensorQuintuple q = std::get<io::QuintupleRecord>(row.content).local();
        std::optional<Mat4> gauge;
        if (rng) gauge = random_unitary(*rng, cfg.rep == RepKind::majorana_real);
        try {
            const BispinorMatrix z = solve_Z(q, rep, gauge, cfg.tol);
            const HermitianFactorSet factors = enumerate_hermitian_factors(build_M(q, rep).M, cfg.tol);
            const TensorQuintuple back = bilinears(z.Z, rep);
            const double residual = max_abs_diff(q, back);
            if (p.json_mode()) {
                json classes = json::array();
                for (std::size_t c = 0; c < factors.sign_classes.size(); ++c) {
                    int members = 0;
                    for (const auto& f : factors.factors) members += f.class_index == static_cast<int>(c);
                    classes.push_back({{"signs", factors.sign_classes[c]}, {"members", members}});
                }
                json j{{"line", row.line},
                       {"feasible", true},
                       {"Z", io::matrix_to_json(z.Z, cfg.rep)},
                       {"rank", factors.rank},
                       {"nonequivalent_count", factors.nonequivalent_count},
                       {"gauge_classes", classes},
                       {"bilinears", io::to_json(back)},
                       {"residual", residual}};
                if (gauge) j["gauge"] = io::matrix_to_json(*gauge, cfg.rep);
                p.emit(j);
            } else {
                p.row({std::to_string(row.line), "yes", "", std::to_string(factors.rank),
                       std::to_string(factors.nonequivalent_count), num(residual)});
            }
        } catch (const Infeasible& e) {
            infeasible = true;
            if (p.json_mode())
                p.emit({{"line", row.line}, {"feasible", false}, {"margin", e.margin()}, {"reason", e.what()}});
            else
                p.row({std::to_string(row.line), "no", num(e.margin()), "", "", ""});
        }
    }
    if (input_error) return exit_code::input_error;
    return infeasible ? exit_code::infeasible : exit_code::ok;
}

int cmd_roundtrip(const JobConfig& cfg, const io::Corpus& corpus, std::ostream& out, std::ostream& err) {
    const DiracRep rep = build_rep(cfg.rep);
    Printer p(out, cfg.format);
    p.header({"line", "ok", "residual", "error"});
    int ok = 0, failed = 0;
    double max_residual = 0.0, sum = 0.0;
    int measured = 0;
    for (const auto& row : corpus.rows) {
        json j{{"line", row.line}};
        std::string problem;
        std::optional<double> residual;
        if (is_error(row)) {
            problem = error_of(row);
        } else {
            try {
                residual = roundtrip_residual(std::get<io::QuintupleRecord>(row.content).local(), rep, cfg.tol);
                if (!(*residual < cfg.tol.roundtrip)) problem = "residual above tolerance";
            } catch (const Error& e) {
                problem = e.what();
            }
        }
        if (residual) {
            ++measured;
            sum += *residual;
            max_residual = std::max(max_residual, *residual);
        }
        problem.empty() ? ++ok : ++failed;
        if (!problem.empty()) err << "line " << row.line << ": " << problem << '\n';
        if (p.json_mode()) {
            j["ok"] = problem.empty();
            j["residual"] = residual ? json(*residual) : json(nullptr);
            if (!problem.empty()) j["error"] = problem;
            p.emit(j);
        } else {
            p.row({std::to_string(row.line), problem.empty() ? "yes" : "no", residual ? num(*residual) : "-", problem});
        }
    }
    const json max_json = measured ? json(max_residual) : json(nullptr);
    const json mean_json = measured ? json(sum / measured) : json(nullptr);
    if (p.json_mode()) {
        p.emit({{"summary",
                 {{"rows", ok + failed}, {"ok", ok}, {"failed", failed}, {"max_residual", max_json},
                  {"mean_residual", mean_json}}}});
    } else {
        out << "rows " << ok + failed << ", ok " << ok << ", failed " << failed << ", max residual "
            << (measured ? num(max_residual) : "-") << ", mean residual " << (measured ? num(sum / measured) : "-")
            << '\n';
    }
    return failed ? exit_code::partial_failure : exit_code::ok;
}

int cmd_gen(const JobConfig& cfg, std::ostream& out) {
    if (cfg.count < 0) throw InputError("--count must be nonnegative");
    if (cfg.max_attempts < 1) throw InputError("--max-attempts must be positive");
    const DiracRep rep = build_rep(cfg.rep);
    const std::uint64_t seed = cfg.seed.value_or(0);
    Rng rng(seed);
    std::vector<TensorQuintuple> rows;
    long long attempts = 0;
    while (static_cast<long long>(rows.size()) < cfg.count) {
        if (attempts++ >= cfg.max_attempts) {
            const std::string msg = "generation exhausted after " + std::to_string(cfg.max_attempts) + " attempts (" +
                                    std::to_string(rows.size()) + " of " + std::to_string(cfg.count) + " rows)";
            throw GenerationExhausted(msg);
        }
        TensorQuintuple q = random_quintuple(rng, cfg.sector);
        if (cfg.feasible_only) {
            const Feasibility f = feasibility(q, rep, cfg.tol);
            if (!f.feasible || f.margin < cfg.margin_min) continue;
        }
        rows.push_back(q);
    }
    json header{{"schema", io::kCorpusSchema},
                {"seed", seed},
                {"count", cfg.count},
                {"feasible_only", cfg.feasible_only},
                {"margin_min", cfg.margin_min},
                {"sector", std::string(to_string(cfg.sector))},
                {"rep", std::string(to_string(cfg.rep))},
                {"attempts", attempts}};
    out << header.dump() << '\n';
    for (const auto& q : rows) out << io::to_json(q).dump() << '\n';
    return exit_code::ok;
}

int cmd_transform(const JobConfig& cfg, const io::Corpus& corpus, std::ostream& out, std::ostream& err) {
    const LorentzTransform w = requested_transform(cfg);
    json header = corpus.header.value_or(json{{"schema", io::kCorpusSchema}});
    json wj = json::array();
    for (int k = 0; k < 16; ++k) wj.push_back(w.w(k / 4, k % 4));
    header["transform"] = wj;
    out << header.dump() << '\n';
    bool input_error = false;
    for (const auto& row : corpus.rows) {
        if (is_error(row)) {
            err << error_of(row) << '\n';
            input_error = true;
            continue;
        }
        out << io::to_json(apply_lorentz(std::get<io::QuintupleRecord>(row.content).local(), w)).dump() << '\n';
    }
    return input_error ? exit_code::input_error : exit_code::ok;
}

// Returns the value of --config if present (both "--config x" and "--config=x").
std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return std::nullopt;
}

}  // namespace

void apply_tolerance_override(Tolerances& tol, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw InputError("tolerance override '" + assignment + "' must be name=value");
    const std::string name = assignment.substr(0, eq);
    const double value = io::parse_number_list(assignment.substr(eq + 1), 1, "tolerance " + name)[0];
    if (!(value >= 0)) throw InputError("tolerance " + name + " must be nonnegative");
    if (name == "feasibility") tol.feasibility = value;
    else if (name == "rank") tol.rank = value;
    else if (name == "roundtrip") tol.roundtrip = value;
    else if (name == "null_current") tol.null_current = value;
    else if (name == "spacelike") tol.spacelike = value;
    else if (name == "nonnegative") tol.nonnegative = value;
    else if (name == "real_sector") tol.real_sector = value;
    else throw InputError("unknown tolerance '" + name + "'");
}

void apply_config(JobConfig& cfg, const json& config) {
    if (!config.is_object()) throw InputError("config: expected a JSON object");
    for (const auto& [key, v] : config.items()) {
        if (key == "rep") cfg.rep = parse_rep_kind(config_value<std::string>(v, key));
        else if (key == "seed") cfg.seed = config_value<std::uint64_t>(v, key);
        else if (key == "format") cfg.format = parse_format(config_value<std::string>(v, key));
        else if (key == "count") cfg.count = config_value<long long>(v, key);
        else if (key == "feasible_only") cfg.feasible_only = config_value<bool>(v, key);
        else if (key == "margin_min") cfg.margin_min = config_value<double>(v, key);
        else if (key == "max_attempts") cfg.max_attempts = config_value<long long>(v, key);
        else if (key == "sector") cfg.sector = parse_sector(config_value<std::string>(v, key));
        else if (key == "rapidity_bound") cfg.rapidity_bound = config_value<double>(v, key);
        else if (key == "random_lorentz") cfg.random_lorentz = config_value<bool>(v, key);
        else if (key == "boost") cfg.boost = vec3_from(config_value<std::string>(v, key), "config boost");
        else if (key == "rotation") cfg.rotation = vec3_from(config_value<std::string>(v, key), "config rotation");
        else if (key == "tolerances") {
            if (!v.is_object()) throw InputError("config: field 'tolerances' must be an object");
            for (const auto& [name, value] : v.items())
                apply_tolerance_override(cfg.tol, name + "=" + value.dump());
        } else {
            throw InputError("config: unknown field '" + key + "'");
        }
    }
}

LorentzTransform requested_transform(const JobConfig& cfg) {
    LorentzTransform w;
    if (cfg.rotation) w = LorentzTransform::rotation(*cfg.rotation);
    if (cfg.boost) w = LorentzTransform::boost(*cfg.boost) * w;
    if (cfg.matrix) w = LorentzTransform::from_matrix(*cfg.matrix) * w;
    if (cfg.random_lorentz) {
        if (!(cfg.rapidity_bound >= 0)) throw InputError("--rapidity-bound must be nonnegative");
        w = random_lorentz(cfg.seed.value_or(0), cfg.rapidity_bound, true) * w;
    }
    return w;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    JobConfig cfg;
    std::string rep_name, format_name, sector_name, boost_text, rotation_text, matrix_text;
    std::uint64_t seed = 0;
    std::vector<std::string> tol_overrides;
    std::string config_path;

    try {
        if (auto path = find_config_path(args)) {
            std::ifstream file(*path);
            if (!file) throw InputError("cannot open config file '" + *path + "'");
            const json config = json::parse(file, nullptr, false);
            if (config.is_discarded()) throw InputError("config file '" + *path + "' is not valid JSON");
            apply_config(cfg, config);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::input_error;
    }

    CLI::App app{"Tensor quintuples and bispinor matrices: feasibility, factorization, round trips", "bispinor"};
    app.require_subcommand(1, 1);

    auto common = [&](CLI::App* sub, bool takes_input) {
        sub->add_option("--rep", rep_name, "Dirac matrix representation")
            ->check(CLI::IsMember({"majorana_real", "dirac_complex"}));
        sub->add_option("--format", format_name, "Output format")->check(CLI::IsMember({"json", "table"}));
        sub->add_option("--config", config_path, "JSON config file (flags take precedence)");
        sub->add_option("--tol", tol_overrides, "Tolerance override name=value (repeatable)");
        if (takes_input) sub->add_option("input", cfg.input_path, "Input file, '-' for standard input");
    };

    auto* check = app.add_subcommand("check", "Feasibility report for each quintuple");
    common(check, true);
    auto* spectrum = app.add_subcommand("spectrum", "Full spectral report including M");
    common(spectrum, true);
    auto* solve = app.add_subcommand("solve", "Arithmetic-root Z and Hermitian factor classes");
    common(solve, true);
    solve->add_option("--seed", seed, "Sample a random gauge matrix U with this seed");
    auto* roundtrip = app.add_subcommand("roundtrip", "Bilinear round-trip residual per row");
    common(roundtrip, true);
    auto* gen = app.add_subcommand("gen", "Generate a seeded random corpus");
    common(gen, false);
    gen->add_option("--seed", seed, "Random seed");
    gen->add_option("--count", cfg.count, "Number of rows");
    gen->add_flag("--feasible-only", cfg.feasible_only, "Keep only solvable rows");
    gen->add_option("--margin-min", cfg.margin_min, "Minimum margin with --feasible-only");
    gen->add_option("--max-attempts", cfg.max_attempts, "Rejection-sampling attempt cap");
    gen->add_option("--sector", sector_name, "real (m = s = n = 0) or full")->check(CLI::IsMember({"real", "full"}));
    auto* transform = app.add_subcommand("transform", "Apply a local Lorentz transformation to a corpus");
    common(transform, true);
    transform->add_option("--boost", boost_text, "Rapidity vector vx,vy,vz");
    transform->add_option("--rotation", rotation_text, "Rotation vector ax,ay,az (axis times angle)");
    transform->add_option("--matrix", matrix_text, "Explicit 4x4 matrix, 16 comma-separated numbers, row-major");
    transform->add_flag("--random-lorentz", cfg.random_lorentz, "Compose a seeded random Lorentz transformation");
    transform->add_option("--seed", seed, "Seed for --random-lorentz");
    transform->add_option("--rapidity-bound", cfg.rapidity_bound, "Largest rapidity for --random-lorentz");

    std::vector<std::string> argv_store{"bispinor"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::input_error;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        cfg.command = parse_command(sub->get_name());
        if (!rep_name.empty()) cfg.rep = parse_rep_kind(rep_name);
        if (!format_name.empty()) cfg.format = parse_format(format_name);
        if (!sector_name.empty()) cfg.sector = parse_sector(sector_name);
        if (sub->get_option_no_throw("--seed") && sub->count("--seed")) cfg.seed = seed;
        for (const auto& t : tol_overrides) apply_tolerance_override(cfg.tol, t);
        if (!boost_text.empty()) cfg.boost = vec3_from(boost_text, "--boost");
        if (!rotation_text.empty()) cfg.rotation = vec3_from(rotation_text, "--rotation");
        if (!matrix_text.empty()) cfg.matrix = matrix_from(io::parse_number_list(matrix_text, 16, "--matrix"));

        if (cfg.command == Command::gen) {
            if (cfg.format == OutputFormat::table) throw InputError("gen writes a corpus; --format table is not available");
            return cmd_gen(cfg, out);
        }
        if (cfg.command == Command::transform && cfg.format == OutputFormat::table)
            throw InputError("transform writes a corpus; --format table is not available");
        if (cfg.command == Command::transform) requested_transform(cfg);  // validate before reading input

        io::Corpus corpus;
        if (cfg.input_path == "-") {
            corpus = io::read_corpus(in);
        } else {
            std::ifstream file(cfg.input_path);
            if (!file) throw InputError("cannot open input file '" + cfg.input_path + "'");
            corpus = io::read_corpus(file);
        }

        switch (cfg.command) {
            case Command::check: return cmd_report(cfg, corpus, out, err, false);
            case Command::spectrum: return cmd_report(cfg, corpus, out, err, true);
            case Command::solve: return cmd_solve(cfg, corpus, out, err);
            case Command::roundtrip: return cmd_roundtrip(cfg, corpus, out, err);
            case Command::transform: return cmd_transform(cfg, corpus, out, err);
            case Command::gen: break;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::input_error;
    }
    return exit_code::ok;
}

}  // namespace bispinor::cli
