#include "coupled/cli/runner.hpp"

#include <fstream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "coupled/cli/format.hpp"
#include "coupled/cli/tables.hpp"
#include "coupled/contraction.hpp"
#include "coupled/errors.hpp"
#include "coupled/oracle.hpp"

namespace coupled::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kEvidence = "sampled evidence, not a proof";
constexpr std::size_t kOracleResolution = 101;

void write_file(const std::filesystem::path& path, const std::string& text, std::ostream& log) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
    if (!out) throw Error("write failed: " + path.string());
    log << "wrote " << path.string() << '\n';
}

ordered_json point_json(const ProductPoint& p) {
    return {{"first", std::vector<double>(p.first.begin(), p.first.end())},
            {"second", std::vector<double>(p.second.begin(), p.second.end())}};
}

ordered_json sampler_json(const SamplerPolicy& s) {
    return {{"grid_points", s.grid_points}, {"random_pairs", s.random_pairs}, {"seed", s.seed}};
}

ordered_json constants_json(const HardyRogersConstants& c) {
    return {{"k1", c.k1}, {"k2", c.k2}, {"k3", c.k3}};
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

class Runner {
public:
    Runner(ExperimentConfig cfg, std::ostream& log)
        : cfg_(std::move(cfg)), log_(log), sys_(build_model(cfg_.model)) {}

    int execute() {
        std::filesystem::create_directories(cfg_.output);
        int status = exit_code::ok;
        for (const auto& c : cfg_.commands) {
            const int s = dispatch(c);
            if (s != exit_code::ok) status = s;
        }
        return status;
    }

private:
    std::filesystem::path file(const std::string& suffix) const {
        return cfg_.output / (cfg_.name + suffix);
    }

    SamplerPolicy sampler() const { return cfg_.sampler(sys_.dim()); }

    int dispatch(const Command& c) {
        switch (c.kind) {
            case CommandKind::Solve: return do_solve();
            case CommandKind::Certify: return do_certify();
            case CommandKind::ReproduceTable: return do_table(c.argument);
            case CommandKind::EstimateLipschitz: return do_lipschitz();
            case CommandKind::SecondOrderCheck: return do_second_order();
        }
        return exit_code::failure;
    }

    int do_solve() {
        ordered_json runs = ordered_json::array();
        int status = exit_code::ok;
        for (std::size_t i = 0; i < cfg_.starts.size(); ++i) {
            const auto [report, trace] = solve(sys_, cfg_.starts[i], cfg_.solver);
            const std::string stem = "_solve_" + std::to_string(i);
            write_file(file(stem + ".csv"), trace_csv(trace), log_);
            write_file(file(stem + "_plot.csv"), emit_plotdata(trace, report.point), log_);

            ordered_json r;
            r["start"] = point_json(cfg_.starts[i]);
            r["stop"] = to_string(report.stop, report.cycle_period);
            r["iterations"] = report.iterations;
            r["point"] = report.point ? point_json(*report.point) : ordered_json(nullptr);
            r["symmetric_collapse"] =
                report.symmetric_collapse ? ordered_json(*report.symmetric_collapse) : ordered_json(nullptr);
            r["bounds_audited"] = report.bounds_audited;
            r["bound_violations"] = report.bound_violations;
            if (trace.factor) r["contraction_factor"] = *trace.factor;
            runs.push_back(std::move(r));

            log_ << "start " << i << ": " << to_string(report.stop, report.cycle_period) << " after "
                 << report.iterations << " iterations\n";
            if (report.bound_violations > 0) {
                log_ << "start " << i << ": " << report.bound_violations << " bound violations\n";
                status = exit_code::audit;
            }
        }
        ordered_json doc;
        doc["name"] = cfg_.name;
        doc["runs"] = std::move(runs);
        write_file(file("_solve.json"), dump(doc), log_);
        return status;
    }

    int do_certify() {
        const SamplerPolicy s = sampler();
        const CertificateReport r = certify(sys_, *cfg_.constants, s);
        ordered_json doc;
        doc["name"] = cfg_.name;
        doc["evidence"] = kEvidence;
        doc["kind"] = std::string(to_string(r.kind));
        doc["constants"] = constants_json(r.constants);
        doc["contraction_factor"] = contraction_factor(r.constants);
        doc["sampler"] = sampler_json(s);
        doc["pairs_tested"] = r.pairs_tested;
        doc["worst_slack"] = r.worst_slack;
        doc["worst_ratio"] = r.worst_ratio;
        doc["passed"] = r.passed;
        doc["expected_pass"] = cfg_.expect_certificate;
        doc["violating_pair"] = r.violating_pair
                                    ? ordered_json{{"p", point_json(r.violating_pair->first)},
                                                   {"q", point_json(r.violating_pair->second)}}
                                    : ordered_json(nullptr);
        write_file(file("_certify.json"), dump(doc), log_);
        log_ << "certify " << to_string(r.kind) << ": " << (r.passed ? "passed" : "failed") << " on "
             << r.pairs_tested << " pairs (" << kEvidence << ")\n";
        if (r.passed != cfg_.expect_certificate) {
            log_ << "certificate outcome differs from expect_certificate\n";
            return exit_code::audit;
        }
        return exit_code::ok;
    }

    int do_table(const std::string& name) {
        write_file(cfg_.output / (name + ".csv"), reproduce_table(name), log_);
        return exit_code::ok;
    }

    int do_lipschitz() {
        const SamplerPolicy s = sampler();
        const double L = estimate_lipschitz(sys_, s);
        ordered_json doc;
        doc["name"] = cfg_.name;
        doc["evidence"] = kEvidence;
        doc["sampler"] = sampler_json(s);
        doc["lipschitz_estimate"] = L;
        write_file(file("_lipschitz.json"), dump(doc), log_);
        log_ << "lipschitz estimate " << format_number(L) << '\n';
        return exit_code::ok;
    }

    int do_second_order() {
        const CournotModel m = cournot_model(cfg_.model);
        const CournotSpec& spec = *cfg_.model.cournot;
        const auto points = grid_fixed_point(sys_, kOracleResolution);
        ordered_json checks = ordered_json::array();
        int status = exit_code::ok;
        for (const auto& p : points) {
            const double x = p.first[0];
            const double y = p.second[0];
            const FocResidual foc = foc_residual(m, x, y, spec.h);
            const SecondOrderCheck soc = second_order_check(m, x, y, spec.h_second);
            ordered_json c;
            c["point"] = point_json(p);
            c["foc_residual"] = {foc.first, foc.second};
            c["foc_one_sided"] = foc.one_sided;
            c["curvature"] = {soc.first_curvature, soc.second_curvature};
            c["second_order_ok"] = {soc.first_ok, soc.second_ok};
            checks.push_back(std::move(c));
            if (!soc.first_ok || !soc.second_ok) status = exit_code::audit;
        }
        ordered_json doc;
        doc["name"] = cfg_.name;
        doc["oracle"] = "grid_fixed_point";
        doc["resolution"] = kOracleResolution;
        doc["checks"] = std::move(checks);
        write_file(file("_second_order.json"), dump(doc), log_);
        log_ << "second-order check at " << points.size() << " fixed point(s)"
             << (status == exit_code::ok ? "" : ": failed") << '\n';
        return status;
    }

    ExperimentConfig cfg_;
    std::ostream& log_;
    ResponseSystem sys_;
};

}  // namespace

int run(ExperimentConfig cfg, const RunOptions& opts, std::ostream& log) {
    if (opts.out) cfg.output = *opts.out;
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.commands) cfg.commands = *opts.commands;
    for (const auto& c : cfg.commands) {
        if (c.kind == CommandKind::Solve && cfg.starts.empty()) {
            throw ConfigurationError("/starts: solve needs at least one start");
        }
        if (c.kind == CommandKind::Certify && !cfg.constants) {
            throw ConfigurationError("/constants: certify needs constants");
        }
    }
    Runner runner(std::move(cfg), log);
    return runner.execute();
}

int run_file(const std::filesystem::path& path, const RunOptions& opts, std::ostream& log,
             std::ostream& err) {
    try {
        return run(load_config(path), opts, log);
    } catch (const ConfigurationError& e) {
        err << "configuration error: " << e.what() << '\n';
        return exit_code::config;
    } catch (const FeasibilityError& e) {
        err << "infeasible model: " << e.what() << '\n';
        return exit_code::infeasible;
    } catch (const SolveError& e) {
        err << "evaluation failed at iterate " << e.iteration() << ": " << e.what() << '\n';
        return exit_code::failure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::failure;
    }
}

}  // namespace coupled::cli
