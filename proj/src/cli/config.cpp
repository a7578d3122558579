#include "coupled/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "coupled/errors.hpp"

namespace coupled::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigurationError(where + ": " + what);
}

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail(where, "expected an object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) fail(where + "/" + key, "unknown field");
    }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) fail(where + "/" + key, "missing field");
    return obj.at(key);
}

double number(const json& v, const std::string& where) {
    if (!v.is_number()) fail(where, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(where, "expected a finite number");
    return d;
}

/// Optional numeric field; leaves `out` untouched when absent.
void read_number(const json& obj, const std::string& key, const std::string& where, double& out) {
    if (obj.contains(key)) out = number(obj.at(key), where + "/" + key);
}

std::size_t count(const json& v, const std::string& where) {
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(where, "expected a nonnegative integer");
    return v.get<std::size_t>();
}

Interval interval(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) fail(where, "expected [lo, hi]");
    const double lo = v[0].is_null() ? -std::numeric_limits<double>::infinity()
                                     : number(v[0], where + "/0");
    const double hi = v[1].is_null() ? std::numeric_limits<double>::infinity()
                                     : number(v[1], where + "/1");
    if (lo > hi) fail(where, "lo exceeds hi");
    return {lo, hi};
}

/// A side list [[lo, hi], ...] or a single [lo, hi].
std::vector<Interval> sides(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) fail(where, "expected a list of [lo, hi] intervals");
    if (!v[0].is_array()) return {interval(v, where)};
    std::vector<Interval> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(interval(v[i], where + "/" + std::to_string(i)));
    return out;
}

std::vector<Piece> pieces(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) fail(where, "expected a list of [lo, hi, value] pieces");
    std::vector<Piece> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string at = where + "/" + std::to_string(i);
        if (!v[i].is_array() || v[i].size() != 3) fail(at, "expected [lo, hi, value]");
        out.push_back({number(v[i][0], at + "/0"), number(v[i][1], at + "/1"),
                       number(v[i][2], at + "/2")});
    }
    return out;
}

AffineCoefficients affine_block(const json& v, const std::string& where) {
    check_keys(v, where, {"c11", "c12", "b1", "c21", "c22", "b2"});
    AffineCoefficients c;
    c.c11 = number(require(v, "c11", where), where + "/c11");
    c.c12 = number(require(v, "c12", where), where + "/c12");
    c.b1 = number(require(v, "b1", where), where + "/b1");
    c.c21 = number(require(v, "c21", where), where + "/c21");
    c.c22 = number(require(v, "c22", where), where + "/c22");
    c.b2 = number(require(v, "b2", where), where + "/b2");
    return c;
}

CournotSpec cournot_block(const json& v, const std::string& where) {
    check_keys(v, where,
               {"intercept", "slope_x", "slope_y", "quad_first", "lin_first", "quad_second",
                "lin_second", "h", "h_second"});
    CournotSpec c;
    c.intercept = number(require(v, "intercept", where), where + "/intercept");
    read_number(v, "slope_x", where, c.slope_x);
    read_number(v, "slope_y", where, c.slope_y);
    read_number(v, "quad_first", where, c.quad_first);
    read_number(v, "lin_first", where, c.lin_first);
    read_number(v, "quad_second", where, c.quad_second);
    read_number(v, "lin_second", where, c.lin_second);
    read_number(v, "h", where, c.h);
    read_number(v, "h_second", where, c.h_second);
    if (!(c.h > 0.0) || !(c.h_second > 0.0)) fail(where, "steps must be positive");
    return c;
}

IsoelasticParams isoelastic_block(const json& v, const std::string& where) {
    check_keys(v, where, {"eta", "c", "q_max"});
    IsoelasticParams p;
    p.eta = number(require(v, "eta", where), where + "/eta");
    p.c = number(require(v, "c", where), where + "/c");
    p.q_max = number(require(v, "q_max", where), where + "/q_max");
    return p;
}

SurplusCoefficients surplus_block(const json& v, const std::string& where) {
    check_keys(v, where, {"f1", "f2", "q1", "q2"});
    SurplusCoefficients c;
    const auto& f1 = require(v, "f1", where);
    check_keys(f1, where + "/f1", {"const", "x", "y", "dx"});
    read_number(f1, "const", where + "/f1", c.f1_const);
    read_number(f1, "x", where + "/f1", c.f1_x);
    read_number(f1, "y", where + "/f1", c.f1_y);
    read_number(f1, "dx", where + "/f1", c.f1_dx);
    const auto& f2 = require(v, "f2", where);
    check_keys(f2, where + "/f2", {"const", "x", "y", "dy"});
    read_number(f2, "const", where + "/f2", c.f2_const);
    read_number(f2, "x", where + "/f2", c.f2_x);
    read_number(f2, "y", where + "/f2", c.f2_y);
    read_number(f2, "dy", where + "/f2", c.f2_dy);
    const auto& q1 = require(v, "q1", where);
    check_keys(q1, where + "/q1", {"u1", "u2"});
    read_number(q1, "u1", where + "/q1", c.q1_u1);
    read_number(q1, "u2", where + "/q1", c.q1_u2);
    const auto& q2 = require(v, "q2", where);
    check_keys(q2, where + "/q2", {"u1", "u2"});
    read_number(q2, "u1", where + "/q2", c.q2_u1);
    read_number(q2, "u2", where + "/q2", c.q2_u2);
    return c;
}

ModelConfig model_block(const json& v) {
    const std::string where = "/model";
    check_keys(v, where,
               {"kind", "affine", "cournot", "isoelastic", "surplus", "piecewise", "domain",
                "projection"});
    const auto& kind = require(v, "kind", where);
    if (!kind.is_string()) fail(where + "/kind", "expected a string");
    ModelConfig m;
    m.kind = kind.get<std::string>();

    const auto block = [&](const char* key) -> const json& { return require(v, key, where); };
    if (m.kind == "affine") {
        m.affine = affine_block(block("affine"), where + "/affine");
    } else if (m.kind == "cournot-quadratic") {
        // checked below
    } else if (m.kind == "isoelastic") {
        m.isoelastic = isoelastic_block(block("isoelastic"), where + "/isoelastic");
    } else if (m.kind == "surplus") {
        m.surplus = surplus_block(block("surplus"), where + "/surplus");
    } else if (m.kind == "piecewise") {
        const auto& pw = block("piecewise");
        check_keys(pw, where + "/piecewise", {"first", "second"});
        m.first_pieces = pieces(require(pw, "first", where + "/piecewise"), where + "/piecewise/first");
        m.second_pieces = pieces(require(pw, "second", where + "/piecewise"), where + "/piecewise/second");
    } else {
        fail(where + "/kind",
             "unknown kind '" + m.kind +
                 "' (expected affine, cournot-quadratic, isoelastic, surplus or piecewise)");
    }
    if (v.contains("cournot")) m.cournot = cournot_block(v.at("cournot"), where + "/cournot");
    if (m.kind == "cournot-quadratic" && !m.cournot) fail(where + "/cournot", "missing field");

    if (m.kind == "piecewise" && !v.contains("domain")) {
        m.first_domain = {PiecewiseResponse(m.first_pieces).domain()};
        m.second_domain = {PiecewiseResponse(m.second_pieces).domain()};
    } else {
        const auto& d = require(v, "domain", where);
        check_keys(d, where + "/domain", {"first", "second"});
        m.first_domain = sides(require(d, "first", where + "/domain"), where + "/domain/first");
        m.second_domain = sides(require(d, "second", where + "/domain"), where + "/domain/second");
    }
    const std::size_t want = m.kind == "surplus" ? 2 : 1;
    if (m.first_domain.size() != want || m.second_domain.size() != want) {
        fail(where + "/domain", "model kind '" + m.kind + "' needs " + std::to_string(want) +
                                    " interval(s) per player");
    }
    if (v.contains("projection")) {
        const auto& p = v.at("projection");
        if (!p.is_string()) fail(where + "/projection", "expected a string");
        try {
            m.projection = parse_projection(p.get<std::string>());
        } catch (const Error& e) {
            fail(where + "/projection", e.what());
        }
    }
    return m;
}

SolverPolicy solver_block(const json& v) {
    const std::string where = "/solver";
    check_keys(v, where,
               {"convergence_tol", "max_iters", "min_iters", "cycle_window", "cycle_tol",
                "cycle_relative_tol", "divergence_bound", "collapse_tol"});
    SolverPolicy p;
    read_number(v, "convergence_tol", where, p.convergence_tol);
    read_number(v, "cycle_tol", where, p.cycle_tol);
    read_number(v, "cycle_relative_tol", where, p.cycle_relative_tol);
    read_number(v, "divergence_bound", where, p.divergence_bound);
    read_number(v, "collapse_tol", where, p.collapse_tol);
    if (v.contains("max_iters")) p.max_iters = count(v.at("max_iters"), where + "/max_iters");
    if (v.contains("min_iters")) p.min_iters = count(v.at("min_iters"), where + "/min_iters");
    if (v.contains("cycle_window")) p.cycle_window = count(v.at("cycle_window"), where + "/cycle_window");
    try {
        p.validate();
    } catch (const Error& e) {
        fail(where, e.what());
    }
    return p;
}

Command command(const json& v, const std::string& where) {
    if (!v.is_string()) fail(where, "expected a command string");
    std::istringstream words(v.get<std::string>());
    std::string verb;
    std::string arg;
    std::string extra;
    words >> verb >> arg >> extra;
    if (!extra.empty()) fail(where, "too many words");
    const auto no_arg = [&](CommandKind k) {
        if (!arg.empty()) fail(where, "'" + verb + "' takes no argument");
        return Command{k, {}};
    };
    if (verb == "solve") return no_arg(CommandKind::Solve);
    if (verb == "certify") return no_arg(CommandKind::Certify);
    if (verb == "estimate-lipschitz") return no_arg(CommandKind::EstimateLipschitz);
    if (verb == "second-order-check") return no_arg(CommandKind::SecondOrderCheck);
    if (verb == "reproduce-table") {
        if (arg.empty()) fail(where, "reproduce-table needs a table name");
        return {CommandKind::ReproduceTable, arg};
    }
    fail(where, "unknown command '" + verb + "'");
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

SamplerPolicy ExperimentConfig::sampler(std::size_t dim) const {
    SamplerPolicy s = SamplerPolicy::default_for(dim);
    if (grid_points) s.grid_points = *grid_points;
    s.random_pairs = random_pairs;
    s.seed = seed;
    return s;
}

ResponseSystem build_model(const ModelConfig& m) {
    if (m.kind == "affine") {
        return build_affine(*m.affine, m.first_domain.at(0), m.second_domain.at(0), m.projection);
    }
    if (m.kind == "cournot-quadratic") {
        return response_from_payoff(cournot_model(m), m.cournot->h).with_projection(m.projection);
    }
    if (m.kind == "isoelastic") {
        return build_isoelastic(*m.isoelastic, m.first_domain.at(0), m.second_domain.at(0))
            .with_projection(m.projection);
    }
    if (m.kind == "surplus") {
        return build_surplus(affine_surplus_model(*m.surplus), Box(m.first_domain),
                             Box(m.second_domain))
            .with_projection(m.projection);
    }
    if (m.kind == "piecewise") {
        return build_piecewise(PiecewiseResponse(m.first_pieces), PiecewiseResponse(m.second_pieces))
            .with_projection(m.projection);
    }
    throw ConfigurationError("unknown model kind '" + m.kind + "'");
}

CournotModel cournot_model(const ModelConfig& m) {
    if (!m.cournot) throw ConfigurationError("/model/cournot: missing field");
    if (m.first_domain.size() != 1 || m.second_domain.size() != 1) {
        throw ConfigurationError("/model/domain: a Cournot model needs scalar players");
    }
    const CournotSpec& c = *m.cournot;
    return CournotModel::linear_quadratic(c.intercept, c.slope_x, c.slope_y, c.quad_first,
                                          c.lin_first, c.quad_second, c.lin_second,
                                          m.first_domain[0], m.second_domain[0]);
}

ExperimentConfig parse_config(std::string_view text, std::string_view source) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        std::ostringstream msg;
        msg << source << ':' << line << ':' << col << ": syntax error";
        throw ConfigurationError(msg.str());
    }

    ExperimentConfig cfg;
    try {
        check_keys(doc, "",
                   {"name", "model", "solver", "constants", "expect_certificate", "sampler",
                    "starts", "commands", "seed", "output"});
        const auto& name = require(doc, "name", "");
        if (!name.is_string() || name.get<std::string>().empty()) fail("/name", "expected a nonempty string");
        cfg.name = name.get<std::string>();
        if (cfg.name.find_first_of("/\\") != std::string::npos) fail("/name", "must not contain path separators");

        cfg.model = model_block(require(doc, "model", ""));
        if (doc.contains("solver")) cfg.solver = solver_block(doc.at("solver"));

        if (doc.contains("constants")) {
            const auto& c = doc.at("constants");
            check_keys(c, "/constants", {"k1", "k2", "k3"});
            HardyRogersConstants k;
            read_number(c, "k1", "/constants", k.k1);
            read_number(c, "k2", "/constants", k.k2);
            read_number(c, "k3", "/constants", k.k3);
            try {
                k.validate();
            } catch (const Error& e) {
                fail("/constants", e.what());
            }
            cfg.constants = k;
            cfg.solver.constants = k;
        }
        if (doc.contains("expect_certificate")) {
            const auto& e = doc.at("expect_certificate");
            if (!e.is_boolean()) fail("/expect_certificate", "expected true or false");
            cfg.expect_certificate = e.get<bool>();
        }
        if (doc.contains("seed")) cfg.seed = count(doc.at("seed"), "/seed");
        if (doc.contains("sampler")) {
            const auto& s = doc.at("sampler");
            check_keys(s, "/sampler", {"grid_points", "random_pairs"});
            if (s.contains("grid_points")) {
                cfg.grid_points = count(s.at("grid_points"), "/sampler/grid_points");
                if (*cfg.grid_points == 1) fail("/sampler/grid_points", "must be 0 or at least 2");
            }
            if (s.contains("random_pairs")) cfg.random_pairs = count(s.at("random_pairs"), "/sampler/random_pairs");
        }
        if (doc.contains("output")) {
            const auto& o = doc.at("output");
            if (!o.is_string() || o.get<std::string>().empty()) fail("/output", "expected a nonempty path");
            cfg.output = o.get<std::string>();
        }

        const auto& cmds = require(doc, "commands", "");
        if (!cmds.is_array() || cmds.empty()) fail("/commands", "expected a nonempty list");
        for (std::size_t i = 0; i < cmds.size(); ++i) {
            cfg.commands.push_back(command(cmds[i], "/commands/" + std::to_string(i)));
        }

        const std::size_t d1 = cfg.model.first_domain.size();
        const std::size_t d2 = cfg.model.second_domain.size();
        if (doc.contains("starts")) {
            const auto& starts = doc.at("starts");
            if (!starts.is_array()) fail("/starts", "expected a list of points");
            for (std::size_t i = 0; i < starts.size(); ++i) {
                const std::string at = "/starts/" + std::to_string(i);
                const auto& s = starts[i];
                if (!s.is_array() || s.size() != d1 + d2) {
                    fail(at, "expected " + std::to_string(d1 + d2) + " coordinates");
                }
                std::vector<double> z;
                for (std::size_t j = 0; j < s.size(); ++j) z.push_back(number(s[j], at + "/" + std::to_string(j)));
                cfg.starts.push_back(split(z, d1));
            }
        }
        for (const auto& c : cfg.commands) {
            if (c.kind == CommandKind::Solve && cfg.starts.empty()) {
                fail("/starts", "solve needs at least one start");
            }
            if (c.kind == CommandKind::Certify && !cfg.constants) {
                fail("/constants", "certify needs constants");
            }
            if (c.kind == CommandKind::SecondOrderCheck && !cfg.model.cournot) {
                fail("/model/cournot", "second-order-check needs a cournot block");
            }
        }
    } catch (const json::exception& e) {
        throw ConfigurationError(std::string(source) + ": " + e.what());
    } catch (const ConfigurationError& e) {
        throw ConfigurationError(std::string(source) + ": " + e.what());
    } catch (const DimensionMismatch& e) {
        throw ConfigurationError(std::string(source) + ": " + e.what());
    } catch (const DomainError& e) {
        throw ConfigurationError(std::string(source) + ": " + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigurationError(path.string() + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

}  // namespace coupled::cli
