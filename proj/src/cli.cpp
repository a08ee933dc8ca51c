#include "nbagg/cli.hpp"

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nbagg/bounds.hpp"
#include "nbagg/core.hpp"
#include "nbagg/exact.hpp"
#include "nbagg/montecarlo.hpp"
#include "nbagg/rule.hpp"
#include "nbagg/serialize.hpp"

namespace nbagg::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kHumanDigits = 6;
constexpr int kMachineDigits = 12;

enum class Format { human, json, csv };

using Value = std::variant<std::monostate, double, std::uint64_t, std::string, std::vector<double>>;
using Record = std::vector<std::pair<std::string, Value>>;

Value optional_value(const std::optional<double>& v) {
    return v ? Value(*v) : Value(std::monostate{});
}

std::string text(const Value& v, int digits, const char* list_sep) {
    struct Visitor {
        int digits;
        const char* sep;
        std::string operator()(std::monostate) const { return "null"; }
        std::string operator()(double d) const { return format_number(d, digits); }
        std::string operator()(std::uint64_t u) const { return std::to_string(u); }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(const std::vector<double>& xs) const {
            std::string s;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                if (i) s += sep;
                s += format_number(xs[i], digits);
            }
            return s;
        }
    };
    return std::visit(Visitor{digits, list_sep}, v);
}

json to_json(const Value& v) {
    struct Visitor {
        json operator()(std::monostate) const { return nullptr; }
        json operator()(double d) const { return round_significant(d, kMachineDigits); }
        json operator()(std::uint64_t u) const { return u; }
        json operator()(const std::string& s) const { return s; }
        json operator()(const std::vector<double>& xs) const {
            json arr = json::array();
            for (double x : xs) arr.push_back(round_significant(x, kMachineDigits));
            return arr;
        }
    };
    return std::visit(Visitor{}, v);
}

json to_json(const Record& rec) {
    json obj = json::object();
    for (const auto& [k, v] : rec) obj[k] = to_json(v);
    return obj;
}

// Writes one or more records with identical keys.
void emit(std::ostream& out, Format fmt, const std::vector<Record>& rows, bool force_array) {
    switch (fmt) {
        case Format::json: {
            if (rows.size() == 1 && !force_array) {
                out << to_json(rows.front()).dump(2) << '\n';
            } else {
                json arr = json::array();
                for (const auto& r : rows) arr.push_back(to_json(r));
                out << arr.dump(2) << '\n';
            }
            return;
        }
        case Format::csv: {
            if (rows.empty()) return;
            for (std::size_t i = 0; i < rows.front().size(); ++i)
                out << (i ? "," : "") << rows.front()[i].first;
            out << '\n';
            for (const auto& r : rows) {
                for (std::size_t i = 0; i < r.size(); ++i) {
                    out << (i ? "," : "");
                    if (!std::holds_alternative<std::monostate>(r[i].second))
                        out << text(r[i].second, kMachineDigits, ";");
                }
                out << '\n';
            }
            return;
        }
        case Format::human: {
            if (rows.size() == 1 && !force_array) {
                for (const auto& [k, v] : rows.front())
                    out << k << ": " << text(v, kHumanDigits, " ") << '\n';
                return;
            }
            if (rows.empty()) return;
            for (std::size_t i = 0; i < rows.front().size(); ++i)
                out << (i ? "\t" : "") << rows.front()[i].first;
            out << '\n';
            for (const auto& r : rows) {
                for (std::size_t i = 0; i < r.size(); ++i)
                    out << (i ? "\t" : "") << text(r[i].second, kHumanDigits, " ");
                out << '\n';
            }
            return;
        }
    }
}

void emit(std::ostream& out, Format fmt, const Record& rec) { emit(out, fmt, {rec}, false); }

std::optional<unsigned> threads_from_env() {
    const char* env = std::getenv(kThreadsEnv);
    if (!env || !*env) return std::nullopt;
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v == 0)
        throw CLI::ValidationError(std::string(kThreadsEnv) + " must be a positive integer");
    return static_cast<unsigned>(v);
}

ExpertPanel load_panel(const std::string& path) { return validate_panel(load_panel_file(path)); }

Record bounds_record(const BoundsReport& r) {
    return {
        {"n", static_cast<std::uint64_t>(r.n)},
        {"pi", r.pi.pi},
        {"upper_thm2", r.upper_thm2},
        {"lower_thm3", r.lower_thm3},
        {"lower_thm4", optional_value(r.lower_thm4)},
        {"bk_lower", optional_value(r.bk_lower)},
        {"bk_upper", optional_value(r.bk_upper)},
        {"manino_lower", optional_value(r.manino_lower)},
        {"manino_upper", optional_value(r.manino_upper)},
        {"hellinger_lower", r.hellinger_lower},
        {"hellinger_upper", r.hellinger_upper},
        {"bhattacharyya", r.bhattacharyya},
        {"exact", optional_value(r.exact)},
    };
}

const CLI::Validator kBits(
    [](std::string& s) -> std::string {
        if (s.empty()) return "bit string is empty";
        for (char c : s)
            if (c != '0' && c != '1') return "bit string may contain only 0 and 1";
        return {};
    },
    "BITS");

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optimal aggregation of conditionally independent binary experts", "nbagg"};
    app.require_subcommand(1);

    std::string format_name;
    std::optional<unsigned> threads_flag;
    app.add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"human", "json", "csv"}));
    app.add_option("--threads", threads_flag, "Worker threads (overrides " +
                                                  std::string(kThreadsEnv) + ")")
        ->check(CLI::PositiveNumber);

    std::string panel_path;
    auto add_panel = [&](CLI::App* sub) {
        sub->add_option("panel", panel_path, "Panel JSON file")->required();
    };
    std::size_t n_max = kDefaultMaxEnumeration;
    auto add_n_max = [&](CLI::App* sub) {
        sub->add_option("--n-max", n_max, "Largest dimension to enumerate")
            ->check(CLI::Range(std::size_t{1}, std::size_t{40}));
    };

    auto* validate_cmd = app.add_subcommand("validate", "Check a panel file and echo it normalized");
    add_panel(validate_cmd);

    std::string bits;
    auto* decide_cmd = app.add_subcommand("decide", "Apply the optimal rule to one input");
    add_panel(decide_cmd);
    decide_cmd->add_option("--x", bits, "Expert votes, expert 1 leftmost")->required()->check(kBits);

    std::string method;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    auto* error_cmd = app.add_subcommand("error", "Optimal error probability");
    add_panel(error_cmd);
    add_n_max(error_cmd);
    error_cmd->add_option("--method", method, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
    auto* error_trials = error_cmd->add_option("--trials", trials, "Monte Carlo trials")
                             ->check(CLI::PositiveNumber);
    auto* error_seed = error_cmd->add_option("--seed", seed, "Monte Carlo seed");

    bool with_exact = false;
    auto* bounds_cmd = app.add_subcommand("bounds", "Closed-form bounds report");
    add_panel(bounds_cmd);
    add_n_max(bounds_cmd);
    bounds_cmd->add_flag("--with-exact", with_exact, "Also enumerate the exact error");

    std::vector<double> p, q;
    auto* tv_cmd = app.add_subcommand("tv", "Distances between two product Bernoulli measures");
    tv_cmd->add_option("--p", p, "Comma-separated parameters")->required()->delimiter(',');
    tv_cmd->add_option("--q", q, "Comma-separated parameters")->required()->delimiter(',');
    add_n_max(tv_cmd);

    std::string kind;
    std::vector<double> eps_grid;
    auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate a tightness counterexample");
    sweep_cmd->add_option("--kind", kind, "asym or sym")
        ->required()
        ->check(CLI::IsMember({"asym", "sym"}));
    sweep_cmd->add_option("--eps", eps_grid, "Comma-separated eps values")
        ->required()
        ->delimiter(',');

    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo error of the optimal rule");
    add_panel(simulate_cmd);
    simulate_cmd->add_option("--trials", trials, "Trials")->required()->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--seed", seed, "Seed");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    std::vector<const char*> argv{"nbagg"};
    for (const auto& a : args) argv.push_back(a.c_str());

    unsigned workers = 1;
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (method == "exact" && (error_trials->count() || error_seed->count()))
            throw CLI::ValidationError("--trials/--seed apply only to --method mc");
        if (method.empty() && (error_trials->count() || error_seed->count()))
            throw CLI::ValidationError("--trials/--seed require --method mc");
        if (method == "mc" && !error_trials->count())
            throw CLI::RequiredError("--trials");
        workers = threads_flag.value_or(threads_from_env().value_or(0));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "nbagg: " << e.what() << '\n';
        return kExitUsage;
    }

    Format fmt = Format::human;
    if (format_name == "json") fmt = Format::json;
    if (format_name == "csv") fmt = Format::csv;
    if (format_name.empty() && *sweep_cmd) fmt = Format::csv;

    const EnumerationOptions opts{n_max, workers};

    try {
        if (*validate_cmd) {
            const PanelInput raw = load_panel_file(panel_path);
            const auto issues = diagnose_panel(raw);
            if (!issues.empty()) {
                for (const auto& d : issues) err << "invalid: " << d.message << '\n';
                return kExitInvalid;
            }
            const ExpertPanel panel = validate_panel(raw);
            if (fmt == Format::json) {
                out << panel_to_json(panel, 2) << '\n';
            } else {
                emit(out, fmt,
                     Record{{"n", static_cast<std::uint64_t>(panel.size())},
                            {"psi", panel.psi()},
                            {"eta", panel.eta()},
                            {"p_y", panel.p_y()}});
            }
        } else if (*decide_cmd) {
            const ExpertPanel panel = load_panel(panel_path);
            const BitVector x = parse_bits(bits);
            if (x.size() != panel.size()) {
                err << "invalid: --x has " << x.size() << " bits but the panel has "
                    << panel.size() << " experts\n";
                return kExitInvalid;
            }
            const int d = build_rule(panel).decide(x);
            if (fmt == Format::human)
                out << d << '\n';
            else
                emit(out, fmt, Record{{"decision", static_cast<std::uint64_t>(d)}});
        } else if (*error_cmd) {
            const ExpertPanel panel = load_panel(panel_path);
            if (method == "mc") {
                const auto r = simulate_error(panel, trials, seed, workers);
                emit(out, fmt,
                     Record{{"method", std::string("mc")},
                            {"error", r.empirical_error},
                            {"std_error", r.std_error},
                            {"trials", r.trials},
                            {"seed", r.seed}});
            } else {
                const std::size_t n = panel.size();
                if (n > n_max) {
                    err << "invalid: " << n << " experts exceed --n-max "
                        << n_max << "; rerun with --method mc\n";
                    return kExitInvalid;
                }
                const double e = optimal_error(panel, opts);
                if (fmt == Format::human)
                    out << format_number(e, kHumanDigits) << '\n';
                else
                    emit(out, fmt,
                         Record{{"method", std::string("exact")},
                                {"error", e},
                                {"n", static_cast<std::uint64_t>(n)}});
            }
        } else if (*bounds_cmd) {
            const ExpertPanel panel = load_panel(panel_path);
            const BoundsReport r = full_report(panel, with_exact, opts);
            if (fmt == Format::json)
                out << report_to_json(r, 2) << '\n';
            else
                emit(out, fmt, bounds_record(r));
        } else if (*tv_cmd) {
            const ProductBernoulli P(p), Q(q);
            if (P.size() != Q.size()) {
                err << "invalid: --p has " << P.size() << " entries but --q has " << Q.size()
                    << '\n';
                return kExitInvalid;
            }
            const AffinityResult a = affinity(P, Q, opts);
            const Interval h = hellinger_envelopes(P, Q);
            emit(out, fmt,
                 Record{{"tv", a.tv},
                        {"min_mass", a.min_mass},
                        {"bhattacharyya", a.bhattacharyya},
                        {"hellinger_lower", h.lower},
                        {"hellinger_upper", h.upper}});
        } else if (*sweep_cmd) {
            const auto k = kind == "asym" ? CounterexampleKind::asymmetric_l2
                                          : CounterexampleKind::symmetric_thm4;
            std::vector<Record> rows;
            for (const auto& row : counterexample_sweep(k, eps_grid))
                rows.push_back(
                    {{"eps", row.eps}, {"exact", row.exact}, {"bound", row.bound}, {"ratio", row.ratio}});
            emit(out, fmt, rows, true);
        } else if (*simulate_cmd) {
            const ExpertPanel panel = load_panel(panel_path);
            const auto r = simulate_error(panel, trials, seed, workers);
            emit(out, fmt,
                 Record{{"trials", r.trials},
                        {"errors", r.errors},
                        {"empirical_error", r.empirical_error},
                        {"std_error", r.std_error},
                        {"seed", r.seed}});
        }
    } catch (const ValidationError& e) {
        for (const auto& d : e.issues()) err << "invalid: " << d.message << '\n';
        return kExitInvalid;
    } catch (const EnumerationLimitError& e) {
        err << "invalid: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        err << "invalid: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitOk;
}

}  // namespace nbagg::cli
