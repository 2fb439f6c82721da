#include "affsim/run.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "affsim/census.hpp"
#include "affsim/closure.hpp"
#include "affsim/errors.hpp"

namespace affsim {

namespace {

using Clock = std::chrono::steady_clock;

long long elapsed_ms(Clock::time_point since) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - since).count();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <ExactField S>
std::string inline_form(const SupportSpec<S>& spec) {
    std::string s;
    for (const auto& en : spec.entries()) {
        if (!s.empty()) s += ",";
        s += std::to_string(en.n) + ":" + std::to_string(en.count);
    }
    return s;
}

OrderedJson check_value(const std::optional<bool>& v) {
    return v ? OrderedJson(*v) : OrderedJson("skipped");
}

template <ExactField S>
RunResult run_typed(const RunConfig& config, const RawSpec& raw, const LambdaTable& lambdas, const FieldChoice& field) {
    const auto started = Clock::now();
    const SpecPtr<S> spec = materialize<S>(raw, lambdas);

    const int probe_max = config.probe_max.value_or(2 * spec->max_n());
    if (probe_max < 1 || probe_max > 10 * spec->max_n())
        throw ConfigError("probe range must lie in [1, " + std::to_string(10 * spec->max_n()) + "], got " +
                          std::to_string(probe_max));
    const bool full = config.level == Level::Full;

    OrderedJson report;
    report["spec"] = spec_to_json(*spec, field);
    report["field"] = field_to_json(field);
    report["dim_expected"] = spec->dimension();
    report["dim_closure"] = nullptr;
    report["witnesses"] = OrderedJson::object();
    report["census"] = OrderedJson::object();
    report["radical_dim"] = nullptr;
    report["center_dim"] = nullptr;
    report["relation_probes"] = OrderedJson::array();
    report["checks_passed"] = false;
    report["timings_ms"] = OrderedJson::object();
    report["level"] = full ? "full" : "fast";
    report["leading_factor"] = config.leading == LeadingFactor::Standard ? "standard" : "paper";
    report["checks"] = OrderedJson::object();
    report["failures"] = OrderedJson::array();
    report["notes"] = OrderedJson::array();

    RunResult result;
    std::ostringstream summary;
    summary << "spec " << inline_form(*spec) << " over " << field_label(field) << " (level "
            << report["level"].get<std::string>() << ", leading factor " << report["leading_factor"].get<std::string>()
            << ")\n";

    auto& timings = report["timings_ms"];
    try {
        auto t = Clock::now();
        const auto gens = build_generators(spec);
        const auto basis = generate_b(gens);
        timings["closure"] = elapsed_ms(t);
        report["dim_closure"] = basis.dimension();

        std::optional<WitnessLedger<S>> ledger;
        std::optional<bool> cross_oracle;
        if (full) {
            t = Clock::now();
            ledger = run_induction(gens, basis, InductionOptions{config.leading});
            cross_oracle = units_agree_with_closure(*ledger, basis);
            timings["witness"] = elapsed_ms(t);
            for (const auto& [c, w] : ledger->components) {
                OrderedJson jw;
                jw["corner"] = to_string(w.corner);
                jw["expected_corner"] = to_string(w.expected_corner);
                jw["support_ok"] = w.support_ok;
                jw["certificate_length"] = w.separator_certificate.coefficients.size();
                jw["units"] = w.units.size();
                jw["verified"] = w.verified();
                report["witnesses"][to_string(c)] = std::move(jw);
            }
            for (const auto& f : ledger->failures) report["failures"].push_back("witness " + f);
        }

        t = Clock::now();
        const auto census = full_census(gens, basis, ledger ? &*ledger : nullptr,
                                        CensusOptions{probe_max, config.threads});
        timings["census"] = elapsed_ms(t);

        for (const auto& [n, count] : census.verified) report["census"][std::to_string(n)] = count;
        report["radical_dim"] = census.radical_dimension ? OrderedJson(*census.radical_dimension) : OrderedJson("skipped");
        report["center_dim"] = census.center_dimension;
        bool probes_ok = true;
        for (const auto& probe : census.relation_probes) {
            OrderedJson jp;
            jp["i"] = probe.exponent;
            jp["support"] = probe.support;
            report["relation_probes"].push_back(std::move(jp));
            probes_ok = probes_ok && probe.matches_divisibility;
        }

        bool surjective = true;
        for (const auto& [c, ok] : census.theta_surjective) surjective = surjective && ok;
        bool separated = true;
        for (const auto& [n, ok] : census.separation) separated = separated && ok;
        std::size_t total_count = 0;
        for (const auto& [n, a] : census.expected) total_count += static_cast<std::size_t>(a);

        auto& checks = report["checks"];
        checks["dimension"] = census.closure_dimension == census.expected_dimension;
        checks["theta_surjective"] = surjective;
        checks["separation"] = separated;
        checks["radical"] = check_value(census.radical_dimension ? std::optional<bool>(*census.radical_dimension == 0)
                                                                 : std::nullopt);
        checks["center"] = census.center_dimension == total_count;
        checks["relation_support"] = probes_ok;
        checks["witnesses"] = check_value(ledger ? std::optional<bool>(ledger->verified(*spec)) : std::nullopt);
        checks["cross_oracle"] = check_value(cross_oracle);

        for (const auto& f : census.failures) report["failures"].push_back(f);
        if (cross_oracle && !*cross_oracle) report["failures"].push_back("matrix units differ from the closure solution");
        for (const auto& n : census.notes) report["notes"].push_back(n);

        const bool passed = census.passed && cross_oracle.value_or(true);
        report["checks_passed"] = passed;
        result.exit_code = passed ? ExitCode::Ok : ExitCode::VerificationFailed;

        summary << "  dim A = " << spec->dimension() << ", dim B = " << basis.dimension() << "\n";
        summary << "    n  a_n  verified\n";
        for (const auto& [n, a] : census.expected) {
            const auto it = census.verified.find(n);
            summary << "  " << (n < 10 ? "  " : " ") << n << "  " << a << "    "
                    << (it == census.verified.end() ? std::string("-") : std::to_string(it->second)) << "\n";
        }
        summary << "  radical "
                << (census.radical_dimension ? std::to_string(*census.radical_dimension) : std::string("skipped"))
                << ", center " << census.center_dimension << "\n";
        if (ledger) {
            std::size_t ok = 0;
            for (const auto& [c, w] : ledger->components) ok += w.verified() ? 1 : 0;
            summary << "  witnesses " << ok << "/" << spec->components().size() << " components verified, cross-oracle "
                    << (cross_oracle.value_or(false) ? "ok" : "FAILED") << "\n";
        }
        summary << "  relation probes i=1.." << probe_max << (probes_ok ? " follow" : " BREAK")
                << " the divisibility rule\n";
        for (const auto& f : report["failures"]) summary << "  failure: " << f.get<std::string>() << "\n";
    } catch (const TheoremViolation& err) {
        report["failures"].push_back(err.what());
        report["internal_error"] = err.what();
        result.exit_code = ExitCode::InternalError;
        summary << "  INTERNAL CONSISTENCY FAILURE: " << err.what() << "\n";
    }

    timings["total"] = elapsed_ms(started);
    summary << "  checks passed: " << (report["checks_passed"].get<bool>() ? "yes" : "no") << "\n";
    summary << "  timings_ms:";
    for (const auto& [k, v] : timings.items()) summary << " " << k << "=" << v.template get<long long>();
    summary << "\n";

    result.report = std::move(report);
    result.summary = summary.str();
    return result;
}

}  // namespace

void write_atomically(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
        out << text;
        out.flush();
        if (!out) throw ConfigError("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw ConfigError("cannot move report into place at '" + path + "': " + ec.message());
    }
}

RunResult run(const RunConfig& config) {
    RunResult result;
    try {
        if (config.spec_inline.has_value() == config.spec_file.has_value())
            throw ConfigError("give exactly one of --spec and --spec-file");
        if (config.threads < 1) throw ConfigError("--threads must be >= 1");

        const RawSpec raw = config.spec_inline ? parse_spec_text(*config.spec_inline)
                                               : parse_spec_text(read_file(*config.spec_file));
        LambdaTable lambdas;
        if (config.lambda.rfind("file:", 0) == 0)
            lambdas = parse_lambda_table(read_file(config.lambda.substr(5)));
        else if (config.lambda != "default")
            throw ConfigError("--lambda must be 'default' or 'file:<path>'");

        const FieldChoice field = config.field.value_or(raw.field.value_or(FieldChoice{}));
        if (field.kind == FieldKind::Rational) {
            result = run_typed<Rational>(config, raw, lambdas, field);
        } else {
            ModP::Scope scope(field.prime);
            result = run_typed<ModP>(config, raw, lambdas, field);
        }
    } catch (const TheoremViolation& err) {
        return {ExitCode::InternalError, {}, err.what()};
    } catch (const ParseError& err) {
        return {ExitCode::InputError, {}, err.what()};
    } catch (const ValidationError& err) {
        return {ExitCode::InputError, {}, err.what()};
    } catch (const FieldTooSmallError& err) {
        return {ExitCode::InputError, {}, err.what()};
    } catch (const ConfigError& err) {
        return {ExitCode::InputError, {}, err.what()};
    } catch (const std::exception& err) {
        return {ExitCode::InternalError, {}, std::string("internal error: ") + err.what()};
    }

    if (config.out_path) {
        try {
            write_atomically(*config.out_path, result.report.dump(2) + "\n");
        } catch (const Error& err) {
            return {ExitCode::InputError, std::move(result.report), err.what()};
        }
    }
    return result;
}

}  // namespace affsim
