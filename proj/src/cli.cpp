#include "pseudoherm/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "pseudoherm/blocks.hpp"
#include "pseudoherm/errors.hpp"
#include "pseudoherm/evolution.hpp"
#include "pseudoherm/metric.hpp"
#include "pseudoherm/states.hpp"

namespace pseudoherm::cli {

namespace {

using Json = nlohmann::ordered_json;
constexpr double pi = std::numbers::pi;

// Thrown for flag combinations CLI11 cannot express.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string command;
    ModelParams params{0.0, 1.0, 0.25};
    bool rho_given = false;
    std::optional<double> alpha;
    double eps_state = 0.1;
    bool eps_given = false;
    std::size_t n = 0;
    std::size_t n_max = 31;
    std::optional<double> t_max;
    std::size_t t_points = 201;
    std::size_t alpha_points = 50;
    std::vector<double> eps_list{0.05, 0.1, 0.2};
    double periods = 50.0;
    std::string format = "csv";
    std::string out_path;
};

// JSON has no NaN; absent values become null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }
Json number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

std::string field(const std::optional<double>& x) { return x ? format_number(*x) : "nan"; }
std::string flag(bool b) { return b ? "1" : "0"; }

Json params_json(const ModelParams& p) {
    return Json{{"hbar_omega", p.hbar_omega}, {"eps_energy", p.eps_energy}, {"rho", p.rho}};
}

Json matrix_json(const CMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(Json{number(m(r, c).real()), number(m(r, c).imag())});
        rows.push_back(row);
    }
    return rows;
}

// Single-record reports are written as quantity,value rows in CSV and as a
// flat object in JSON.
class Report {
public:
    void add(const std::string& key, double v) { entries_.emplace_back(key, v); }
    void add(const std::string& key, std::size_t v) {
        entries_.emplace_back(key, static_cast<double>(v));
        counts_.push_back(key);
    }
    void add(const std::string& key, bool v) {
        entries_.emplace_back(key, v ? 1.0 : 0.0);
        flags_.push_back(key);
    }

    void write_csv(std::ostream& os) const {
        os << "quantity,value\n";
        for (const auto& [k, v] : entries_) os << k << ',' << format_number(v) << '\n';
    }

    Json json() const {
        Json j = Json::object();
        for (const auto& [k, v] : entries_) {
            if (std::find(flags_.begin(), flags_.end(), k) != flags_.end()) {
                j[k] = v != 0.0;
            } else if (std::find(counts_.begin(), counts_.end(), k) != counts_.end()) {
                j[k] = static_cast<std::size_t>(v);
            } else {
                j[k] = number(v);
            }
        }
        return j;
    }

private:
    std::vector<std::pair<std::string, double>> entries_;
    std::vector<std::string> flags_;
    std::vector<std::string> counts_;
};

void emit_json(std::ostream& os, const Json& j) { os << j.dump(2) << '\n'; }

void require_eps(double eps, const char* what) {
    if (!(eps > 0.0 && eps <= pi / 2)) {
        throw UsageError(std::string(what) + " must lie in (0, pi/2], got " + format_number(eps));
    }
}

void warn_regime(double eps, std::ostream& err) {
    if (states::ThetaEps::from_eps(eps).outside_small_eps_regime()) {
        err << "warning: eps " << format_number(eps) << " is outside the small-separation regime (> 0.3)\n";
    }
}

void cmd_spectrum(const RunConfig& cfg, std::ostream& os) {
    struct Row {
        std::size_t n;
        double plus, minus, imag, alpha;
        bool real, exceptional;
    };
    std::vector<Row> rows;
    for (std::size_t n = 0; n < cfg.n_max; ++n) {
        const auto ev = blocks::block_eigenvalues_complex(n, cfg.params);
        const bool real = blocks::reality_condition(n, cfg.params) && cfg.params.hbar_omega > cfg.params.eps_energy;
        const double alpha = real ? blocks::alpha_of(n, cfg.params) : std::nan("");
        rows.push_back({n, ev[0].real(), ev[1].real(), std::abs(ev[0].imag()), alpha, real,
                        blocks::is_exceptional_point(n, cfg.params)});
    }
    if (cfg.format == "json") {
        Json out{{"command", "spectrum"}, {"params", params_json(cfg.params)}, {"n_max", cfg.n_max}};
        Json list = Json::array();
        for (const auto& r : rows) {
            list.push_back(Json{{"n", r.n},
                                {"lambda_plus", number(r.plus)},
                                {"lambda_minus", number(r.minus)},
                                {"lambda_imag", number(r.imag)},
                                {"alpha", number(r.alpha)},
                                {"reality", r.real},
                                {"exceptional", r.exceptional}});
        }
        out["rows"] = list;
        emit_json(os, out);
        return;
    }
    os << "n,lambda_plus,lambda_minus,lambda_imag,alpha,reality_flag,exceptional_flag\n";
    for (const auto& r : rows) {
        os << r.n << ',' << format_number(r.plus) << ',' << format_number(r.minus) << ',' << format_number(r.imag)
           << ',' << format_number(r.alpha) << ',' << flag(r.real) << ',' << flag(r.exceptional) << '\n';
    }
}

void cmd_metric(const RunConfig& cfg, std::ostream& os) {
    const auto eta = metric::metric_spectral(cfg.n, cfg.params);
    const auto closed = metric::metric_closed_form(eta.alpha);
    const auto ev = metric::metric_eigenvalues(eta);
    Report rep;
    rep.add("n", cfg.n);
    rep.add("alpha", eta.alpha);
    rep.add("eta_00", eta.matrix(0, 0).real());
    rep.add("eta_01", eta.matrix(0, 1).real());
    rep.add("eta_10", eta.matrix(1, 0).real());
    rep.add("eta_11", eta.matrix(1, 1).real());
    rep.add("eigenvalue_upper", ev.upper);
    rep.add("eigenvalue_lower", ev.lower);
    rep.add("positive_definite", ev.lower > 0.0);
    rep.add("spectral_minus_closed_form", max_abs_diff(eta.matrix, closed.matrix));
    rep.add("quasi_hermiticity_residual", metric::quasi_hermiticity_residual(cfg.n, cfg.params));
    if (cfg.format == "json") {
        Json out{{"command", "metric"}, {"params", params_json(cfg.params)}};
        out["report"] = rep.json();
        emit_json(os, out);
    } else {
        rep.write_csv(os);
    }
}

void cmd_discriminate(const RunConfig& cfg, std::ostream& os) {
    const double eps = cfg.eps_state;
    const auto te = states::ThetaEps::from_eps(eps);
    const double alpha = states::discrimination_alpha(eps);
    const auto eta = metric::metric_closed_form(alpha);
    const auto [p1, p2] = states::make_psi_pair_12(te);
    const auto o12 = states::eta_overlap_12(te, eta);
    const auto o34 = states::eta_overlap_34(te, eta);
    const auto c = states::completeness_report(eps);

    Report rep;
    rep.add("eps_state", eps);
    rep.add("alpha", alpha);
    rep.add("eta_01", eta.matrix(0, 1).real());
    rep.add("dirac_overlap_12", dirac_inner(p1.vec(), p2.vec()).real());
    rep.add("eta_overlap_12_raw", o12.raw.real());
    rep.add("eta_overlap_12_normalized", o12.normalized.real());
    rep.add("eta_overlap_34_raw", o34.raw.real());
    rep.add("eta_overlap_34_normalized", o34.normalized.real());
    rep.add("eta_overlap_34_expected", 2.0 * std::cos(eps) * std::sin(eps) * std::sin(eps));
    rep.add("p1_plus_p2_minus_identity", c.from_states.pair_12_minus_identity);
    rep.add("p3_plus_p4_minus_identity", c.from_states.pair_34_minus_identity);
    rep.add("tabulated_sum_minus_double_identity", c.tabulated.sum_minus_double_identity);
    rep.add("p1_on_psi2", c.p1_on_psi2);
    rep.add("p3_on_psi4", c.p3_on_psi4);
    rep.add("outside_small_eps_regime", te.outside_small_eps_regime());
    if (cfg.format == "json") {
        Json out{{"command", "discriminate"}};
        out["report"] = rep.json();
        emit_json(os, out);
    } else {
        rep.write_csv(os);
    }
}

void cmd_projectors(const RunConfig& cfg, std::ostream& os) {
    const double eps = cfg.eps_state;
    const auto te = states::ThetaEps::from_eps(eps);
    const double alpha = states::discrimination_alpha(eps);
    const auto eta = metric::metric_closed_form(alpha);
    const auto [p1, p2] = states::make_psi_pair_12(te);
    const auto [p3, p4] = states::make_psi_pair_34(te);
    const std::array<Vec2, 4> psi{p1.vec(), p2.vec(), p3.vec(), p4.vec()};

    struct Row {
        std::string source;
        int i;
        CMatrix p;
        double idempotency;
        double fixes_own_state;  // Dirac norm of P_i psi_i - psi_i
    };
    std::vector<Row> rows;
    for (const std::string source : {"states", "tabulated"}) {
        for (int i = 1; i <= 4; ++i) {
            CMatrix p = source == "states" ? states::projector(i, te, eta) : states::tabulated_projector(i, eps);
            const Vec2 img = p * psi[i - 1];
            const double own = std::hypot(std::abs(img[0] - psi[i - 1][0]), std::abs(img[1] - psi[i - 1][1]));
            const double idem = max_abs_diff(p * p, p);
            rows.push_back({source, i, std::move(p), idem, own});
        }
    }
    const auto c = states::completeness_report(eps);

    if (cfg.format == "json") {
        Json list = Json::array();
        for (const auto& r : rows) {
            list.push_back(Json{{"source", r.source},
                                {"i", r.i},
                                {"matrix", matrix_json(r.p)},
                                {"idempotency_residual", number(r.idempotency)},
                                {"own_state_residual", number(r.fixes_own_state)}});
        }
        auto summary = [](const states::ProjectorSetSummary& s) {
            return Json{{"p1_plus_p2_minus_identity", number(s.pair_12_minus_identity)},
                        {"p3_plus_p4_minus_identity", number(s.pair_34_minus_identity)},
                        {"sum_minus_double_identity", number(s.sum_minus_double_identity)},
                        {"p1_minus_p4", number(s.p1_minus_p4)},
                        {"p2_minus_p3", number(s.p2_minus_p3)},
                        {"max_idempotency_residual", number(s.max_idempotency)}};
        };
        Json out{{"command", "projectors"}, {"eps_state", eps}, {"alpha", alpha}, {"projectors", list}};
        out["completeness"] = Json{{"states", summary(c.from_states)},
                                   {"tabulated", summary(c.tabulated)},
                                   {"tabulated_vs_states_12", number(c.tabulated_vs_states_12)},
                                   {"p1_on_psi2", number(c.p1_on_psi2)},
                                   {"p2_on_psi1", number(c.p2_on_psi1)},
                                   {"p3_on_psi4", number(c.p3_on_psi4)},
                                   {"p4_on_psi3", number(c.p4_on_psi3)},
                                   {"tabulated_p4_on_psi3", number(c.tabulated_p4_on_psi3)},
                                   {"tabulated_p4_on_psi4", number(c.tabulated_p4_on_psi4)}};
        emit_json(os, out);
        return;
    }
    os << "source,i,p00,p01,p10,p11,idempotency_residual,own_state_residual\n";
    for (const auto& r : rows) {
        os << r.source << ',' << r.i;
        for (std::size_t k = 0; k < 4; ++k) os << ',' << format_number(r.p(k / 2, k % 2).real());
        os << ',' << format_number(r.idempotency) << ',' << format_number(r.fixes_own_state) << '\n';
    }
}

ModelParams resolved_params(const RunConfig& cfg, std::size_t block) {
    ModelParams p = cfg.params;
    if (cfg.alpha) p.rho = blocks::rho_for_alpha(*cfg.alpha, block, p.hbar_omega, p.eps_energy);
    return p;
}

void cmd_evolve(const RunConfig& cfg, std::ostream& os) {
    const ModelParams& p = cfg.params;
    const auto eff = evolution::effective_hamiltonian(p);
    const auto te = states::ThetaEps::from_eps(cfg.eps_state);
    double t_max = 100.0;
    if (cfg.t_max) {
        t_max = *cfg.t_max;
    } else if (eff.beta > 0.0) {
        t_max = cfg.periods * 2.0 * pi / eff.beta;
    }

    std::vector<double> grid;
    for (std::size_t k = 0; k < cfg.t_points; ++k) {
        grid.push_back(cfg.t_points == 1 ? 0.0 : t_max * static_cast<double>(k) / static_cast<double>(cfg.t_points - 1));
    }
    const auto trace = evolution::overlap_trajectory(te, p, grid);
    const auto found = evolution::search_orthogonality(te, p, t_max);

    if (cfg.format == "json") {
        Json samples = Json::array();
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const Complex z = trace.overlaps[k];
            samples.push_back(Json{{"t", number(grid[k])},
                                   {"re_overlap", number(z.real())},
                                   {"im_overlap", number(z.imag())},
                                   {"abs_overlap", number(std::abs(z))}});
        }
        Json out{{"command", "evolve"},
                 {"params", params_json(p)},
                 {"eps_state", cfg.eps_state},
                 {"alpha", eff.alpha},
                 {"beta", eff.beta},
                 {"t_max", t_max},
                 {"samples", samples},
                 {"t_star", number(found.t_star)},
                 {"divergent", !found.t_star.has_value()},
                 {"min_abs_overlap", number(found.min_abs_overlap)},
                 {"first_real_zero", number(found.first_real_zero)}};
        emit_json(os, out);
        return;
    }
    os << "t,re_overlap,im_overlap,abs_overlap\n";
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Complex z = trace.overlaps[k];
        os << format_number(grid[k]) << ',' << format_number(z.real()) << ',' << format_number(z.imag()) << ','
           << format_number(std::abs(z)) << '\n';
    }
    os << "t_star," << (found.t_star ? format_number(*found.t_star) : std::string("divergent")) << '\n';
}

std::vector<double> alpha_grid(std::size_t points) {
    std::vector<double> g;
    for (std::size_t k = 0; k < points; ++k) g.push_back((pi / 2) * static_cast<double>(k) / static_cast<double>(points - 1));
    g.back() = pi / 2;
    return g;
}

void cmd_scan(const RunConfig& cfg, std::ostream& os) {
    const evolution::ParamsFamily family{cfg.params.hbar_omega, cfg.params.eps_energy, cfg.periods};
    const auto grid = alpha_grid(cfg.alpha_points);
    const auto rows = evolution::scan_alpha(cfg.eps_list, grid, family);
    if (cfg.format == "json") {
        Json list = Json::array();
        for (const auto& r : rows) {
            list.push_back(Json{{"eps_state", r.eps_state},
                                {"alpha", r.alpha},
                                {"t_star", number(r.t_star)},
                                {"beta_t_star", number(r.beta_t_star)},
                                {"sin2_beta_t_star", number(r.sin2_beta_t_star)},
                                {"divergent", r.divergent},
                                {"min_abs_overlap", number(r.min_abs_overlap)},
                                {"re_root_beta_t", number(r.real_zero_beta_t)}});
        }
        Json out{{"command", "scan"},
                 {"hbar_omega", family.hbar_omega},
                 {"eps_energy", family.eps_energy},
                 {"periods", family.periods},
                 {"rows", list}};
        emit_json(os, out);
        return;
    }
    os << "eps_state,alpha,t_star,beta_t_star,sin2_beta_t_star,divergent_flag,min_abs_overlap,re_root_beta_t\n";
    for (const auto& r : rows) {
        os << format_number(r.eps_state) << ',' << format_number(r.alpha) << ',' << field(r.t_star) << ','
           << field(r.beta_t_star) << ',' << field(r.sin2_beta_t_star) << ',' << flag(r.divergent) << ','
           << field(r.min_abs_overlap) << ',' << field(r.real_zero_beta_t) << '\n';
    }
}

void cmd_eq_audit(const RunConfig& cfg, std::ostream& os) {
    const evolution::ParamsFamily family{cfg.params.hbar_omega, cfg.params.eps_energy, cfg.periods};

    struct KernelRow {
        double alpha, beta_t, t, diagonal, off_diagonal, predicted_off_diagonal;
    };
    std::vector<KernelRow> kernel;
    double max_diag = 0.0, max_off = 0.0;
    for (int ia = 0; ia < 8; ++ia) {
        const double alpha = 0.1 + 0.2 * ia;
        const ModelParams p = family.at_alpha(alpha);
        const double beta = evolution::effective_hamiltonian(p).beta;
        for (int k = 0; k <= 16; ++k) {
            const double bt = pi * k / 8.0;
            const double t = bt / beta;
            const auto r = evolution::kernel_residual(t, p);
            const double s = std::sin(bt);
            kernel.push_back({alpha, bt, t, r.diagonal, r.off_diagonal,
                              2.0 * s * s * std::sin(alpha) * (1.0 - std::cos(bt))});
            max_diag = std::max(max_diag, r.diagonal);
            max_off = std::max(max_off, r.off_diagonal);
        }
    }

    struct OrthoRow {
        double eps, alpha;
        evolution::TabulatedCondition tab;
        double re_zero_sin2;
        std::optional<double> t_star, sin2_t_star, first_real_zero_sin2;
    };
    std::vector<OrthoRow> ortho;
    for (double eps : cfg.eps_list) {
        for (double alpha : {0.3, 0.6, 0.9, 1.2}) {
            const ModelParams p = family.at_alpha(alpha);
            const double beta = evolution::effective_hamiltonian(p).beta;
            const auto te = states::ThetaEps::from_eps(eps);
            const auto found = evolution::search_orthogonality(te, p, family.periods * 2.0 * pi / beta);
            OrthoRow row{eps, alpha, evolution::tabulated_orthogonality_condition(alpha, eps),
                         evolution::real_part_zero_sin2(alpha, eps), found.t_star, std::nullopt, std::nullopt};
            if (found.t_star) row.sin2_t_star = std::pow(std::sin(beta * *found.t_star), 2);
            if (found.first_real_zero) row.first_real_zero_sin2 = std::pow(std::sin(beta * *found.first_real_zero), 2);
            ortho.push_back(row);
        }
    }

    if (cfg.format == "json") {
        Json grid = Json::array();
        for (const auto& r : kernel) {
            grid.push_back(Json{{"alpha", r.alpha},
                                {"beta_t", r.beta_t},
                                {"t", r.t},
                                {"diagonal_residual", number(r.diagonal)},
                                {"off_diagonal_residual", number(r.off_diagonal)},
                                {"predicted_off_diagonal_residual", number(r.predicted_off_diagonal)}});
        }
        Json table = Json::array();
        for (const auto& r : ortho) {
            table.push_back(Json{{"eps_state", r.eps},
                                 {"alpha", r.alpha},
                                 {"tabulated_sin2_beta_t", number(r.tab.sin2_beta_t)},
                                 {"tabulated_numerator", number(r.tab.numerator_polynomial)},
                                 {"tabulated_radicand", number(r.tab.radicand)},
                                 {"tabulated_denominator", number(r.tab.denominator)},
                                 {"tabulated_singular", r.tab.singular},
                                 {"tabulated_admissible", r.tab.admissible},
                                 {"real_part_zero_sin2", number(r.re_zero_sin2)},
                                 {"numeric_t_star", number(r.t_star)},
                                 {"numeric_sin2_beta_t_star", number(r.sin2_t_star)},
                                 {"numeric_first_real_zero_sin2", number(r.first_real_zero_sin2)}});
        }
        Json out{{"command", "eq-audit"},
                 {"label", "printed-formula audit"},
                 {"hbar_omega", family.hbar_omega},
                 {"eps_energy", family.eps_energy},
                 {"kernel", Json{{"max_diagonal_residual", number(max_diag)},
                                 {"max_off_diagonal_residual", number(max_off)},
                                 {"grid", grid}}},
                 {"orthogonality", table}};
        emit_json(os, out);
        return;
    }
    os << "section,alpha,eps_state,beta_t,quantity,value\n";
    auto line = [&os](const char* section, double alpha, const std::string& eps, double bt, const char* q,
                      const std::string& v) {
        os << section << ',' << format_number(alpha) << ',' << eps << ',' << format_number(bt) << ',' << q << ',' << v
           << '\n';
    };
    for (const auto& r : kernel) {
        line("kernel", r.alpha, "nan", r.beta_t, "diagonal_residual", format_number(r.diagonal));
        line("kernel", r.alpha, "nan", r.beta_t, "off_diagonal_residual", format_number(r.off_diagonal));
        line("kernel", r.alpha, "nan", r.beta_t, "predicted_off_diagonal_residual",
             format_number(r.predicted_off_diagonal));
    }
    const double nan = std::nan("");
    for (const auto& r : ortho) {
        const std::string e = format_number(r.eps);
        line("orthogonality", r.alpha, e, nan, "tabulated_sin2_beta_t", field(r.tab.sin2_beta_t));
        line("orthogonality", r.alpha, e, nan, "tabulated_admissible", flag(r.tab.admissible));
        line("orthogonality", r.alpha, e, nan, "real_part_zero_sin2", format_number(r.re_zero_sin2));
        line("orthogonality", r.alpha, e, nan, "numeric_t_star", field(r.t_star));
        line("orthogonality", r.alpha, e, nan, "numeric_sin2_beta_t_star", field(r.sin2_t_star));
        line("orthogonality", r.alpha, e, nan, "numeric_first_real_zero_sin2", field(r.first_real_zero_sin2));
    }
}

void validate(RunConfig& cfg) {
    cfg.params.validate();
    if (cfg.alpha && cfg.rho_given) throw UsageError("--rho and --alpha are mutually exclusive");
    if (cfg.alpha && !(*cfg.alpha >= 0.0 && *cfg.alpha <= pi / 2)) throw UsageError("--alpha must lie in [0, pi/2]");
    if (cfg.t_max && !(*cfg.t_max > 0.0 && std::isfinite(*cfg.t_max))) throw UsageError("--t-max must be positive");
    if (!(cfg.periods > 0.0 && std::isfinite(cfg.periods))) throw UsageError("--periods must be positive");
    if (cfg.t_points < 1) throw UsageError("--t-points must be at least 1");
    if (cfg.alpha_points < 2) throw UsageError("--alpha-points must be at least 2");
    if (cfg.n_max < 1) throw UsageError("--n-max must be at least 1");
    if (cfg.eps_list.empty()) throw UsageError("--eps-list is empty");

    const std::string& c = cfg.command;
    if ((c == "discriminate" || c == "projectors") && !cfg.eps_given) {
        throw UsageError("--eps is required; usage: pseudoherm " + c + " --eps EPS [--format csv|json] [--out PATH]");
    }
    if (c == "discriminate" || c == "projectors" || c == "evolve") require_eps(cfg.eps_state, "--eps");
    if (c == "scan" || c == "eq-audit") {
        for (double e : cfg.eps_list) require_eps(e, "--eps-list entries");
    }
    if (c == "evolve" && cfg.n != 0) throw UsageError("evolve works on block 0; drop --n");
    if (cfg.alpha) {
        if (!(cfg.params.hbar_omega > cfg.params.eps_energy)) {
            throw UsageError("--alpha requires hbar_omega > eps_energy");
        }
        cfg.params = resolved_params(cfg, cfg.n);
    }
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Pseudo-Hermitian spin-oscillator toolkit", "pseudoherm"};
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--hbar-omega", cfg.params.hbar_omega, "oscillator quantum (default 1)");
    app.add_option("--eps-energy", cfg.params.eps_energy, "spin splitting (default 0)");
    auto* rho = app.add_option("--rho", cfg.params.rho, "coupling (default 0.25)");
    app.add_option("--alpha", cfg.alpha, "metric angle of block --n; sets rho instead of --rho");
    auto* eps = app.add_option("--eps", cfg.eps_state, "state separation (default 0.1)");
    app.add_option("--n", cfg.n, "block index (default 0)");
    app.add_option("--n-max", cfg.n_max, "number of blocks for spectrum (default 31)");
    app.add_option("--t-max", cfg.t_max, "evolution window (default: --periods periods 2 pi / beta)");
    app.add_option("--t-points", cfg.t_points, "samples for evolve (default 201)");
    app.add_option("--periods", cfg.periods, "search window in periods 2 pi / beta (default 50)");
    app.add_option("--alpha-points", cfg.alpha_points, "alpha grid size over [0, pi/2] (default 50)");
    app.add_option("--eps-list", cfg.eps_list, "comma-separated eps values for scan and eq-audit")->delimiter(',');
    app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out_path, "write to PATH instead of stdout");

    for (const char* name : {"spectrum", "metric", "discriminate", "projectors", "evolve", "scan", "eq-audit"}) {
        app.add_subcommand(name)->callback([&cfg, name] { cfg.command = name; });
    }
    app.get_subcommand("spectrum")->description("block eigenvalues, alpha and reality flags for n < n_max");
    app.get_subcommand("metric")->description("metric of block n and its checks");
    app.get_subcommand("discriminate")->description("overlaps and completeness at sin(alpha) = cos(eps)");
    app.get_subcommand("projectors")->description("state and tabulated projectors at sin(alpha) = cos(eps)");
    app.get_subcommand("evolve")->description("overlap trajectory under exp(-iHt) and the orthogonality time");
    app.get_subcommand("scan")->description("orthogonality time over an alpha grid for each eps");
    app.get_subcommand("eq-audit")->description("printed-formula audit of the Gram kernel and orthogonality condition");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        cfg.rho_given = rho->count() > 0;
        cfg.eps_given = eps->count() > 0;
        validate(cfg);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << " (run with --help for usage)\n";
        return usage_error;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return domain_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }

    std::ostringstream buffer;
    try {
        if (cfg.command == "spectrum") {
            cmd_spectrum(cfg, buffer);
        } else if (cfg.command == "metric") {
            cmd_metric(cfg, buffer);
        } else if (cfg.command == "discriminate") {
            warn_regime(cfg.eps_state, err);
            cmd_discriminate(cfg, buffer);
        } else if (cfg.command == "projectors") {
            warn_regime(cfg.eps_state, err);
            cmd_projectors(cfg, buffer);
        } else if (cfg.command == "evolve") {
            cmd_evolve(cfg, buffer);
        } else if (cfg.command == "scan") {
            cmd_scan(cfg, buffer);
        } else {
            cmd_eq_audit(cfg, buffer);
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return domain_error;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return domain_error;
    }

    if (cfg.out_path.empty()) {
        out << buffer.str();
        return ok;
    }
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) {
        err << "error: cannot open " << cfg.out_path << " for writing\n";
        return usage_error;
    }
    file << buffer.str();
    return file ? ok : domain_error;
}

}  // namespace pseudoherm::cli
