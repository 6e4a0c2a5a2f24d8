#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <vector>

#include "handles.hpp"
#include "output.hpp"

namespace ifscli {

namespace {

namespace fs = std::filesystem;

class Budget {
public:
    explicit Budget(double seconds) : seconds_(seconds), start_(std::chrono::steady_clock::now()) {}
    bool expired() const {
        return seconds_ > 0 &&
               std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() >= seconds_;
    }
    /// What is left for a library call; 0 keeps it unbounded.
    double remaining() const {
        if (seconds_ <= 0) return 0.0;
        const double used = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return std::max(1e-3, seconds_ - used);
    }

private:
    double seconds_;
    std::chrono::steady_clock::time_point start_;
};

Ifs build_ifs(const RunConfig& cfg) {
    ifslab_ifs* raw = nullptr;
    if (cfg.preset) {
        const int st = ifslab_ifs_preset(cfg.preset->c_str(), &raw);
        if (st != IFSLAB_OK) throw ConfigError("unknown preset '" + *cfg.preset + "'; known presets:\n" + ifslab_preset_names());
        return Ifs(raw);
    }
    const auto [lo, hi] = *cfg.domain;
    std::vector<Map> owned;
    std::vector<const ifslab_map*> maps;
    for (const MapSpec& m : cfg.maps) {
        ifslab_map* mp = nullptr;
        int st = IFSLAB_OK;
        if (m.kind == MapSpec::Kind::Quadratic) {
            st = ifslab_map_quadratic(lo, hi, m.a, m.b, m.c, &mp);
        } else {
            std::vector<double> xs, ys;
            if (m.kind == MapSpec::Kind::Linear) {
                xs = {lo, hi};
                ys = {m.b * lo + m.c, m.b * hi + m.c};
            } else {
                for (const auto& [x, y] : m.vertices) xs.push_back(x), ys.push_back(y);
            }
            st = ifslab_map_vertices(xs.data(), ys.data(), xs.size(), &mp);
        }
        if (st != IFSLAB_OK)
            throw ConfigError("map on line " + std::to_string(m.line) + ": " + ifslab_last_error());
        owned.emplace_back(mp);
        maps.push_back(mp);
    }
    if (ifslab_ifs_new(lo, hi, maps.data(), maps.size(), "inline", &raw) != IFSLAB_OK)
        throw ConfigError(std::string("invalid IFS: ") + ifslab_last_error());
    return Ifs(raw);
}

int ifs_size(const ifslab_ifs* f) {
    int k = 0;
    check(ifslab_ifs_size(f, &k), "ifs_size");
    return k;
}

std::pair<double, double> ifs_domain(const ifslab_ifs* f) {
    double lo = 0, hi = 0;
    check(ifslab_ifs_domain(f, &lo, &hi), "ifs_domain");
    return {lo, hi};
}

std::vector<double> weights_for(const RunConfig& cfg, int k) {
    if (cfg.weights) {
        if (static_cast<int>(cfg.weights->size()) != k)
            throw ConfigError("weights: expected " + std::to_string(k) + " values");
        return *cfg.weights;
    }
    return std::vector<double>(static_cast<std::size_t>(k), 1.0 / k);
}

/// Explicit matrix if given, otherwise the rank-one matrix of the weights.
Matrix matrix_for(const RunConfig& cfg, int k, bool required) {
    ifslab_matrix* raw = nullptr;
    if (cfg.matrix_path) {
        if (ifslab_matrix_read_csv(cfg.matrix_path->c_str(), &raw) != IFSLAB_OK)
            throw ConfigError(std::string("matrix: ") + ifslab_last_error());
    } else if (cfg.matrix) {
        const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(cfg.matrix->size()))));
        if (static_cast<std::size_t>(n * n) != cfg.matrix->size()) throw ConfigError("matrix: entry count is not a square");
        if (ifslab_matrix_new(n, cfg.matrix->data(), &raw) != IFSLAB_OK)
            throw ConfigError(std::string("matrix: ") + ifslab_last_error());
    } else if (required) {
        throw ConfigError("this command needs --matrix");
    } else {
        const auto w = weights_for(cfg, k);
        if (ifslab_matrix_bernoulli(w.data(), w.size(), &raw) != IFSLAB_OK)
            throw ConfigError(std::string("weights: ") + ifslab_last_error());
    }
    Matrix p(raw);
    int n = 0;
    check(ifslab_matrix_size(p.get(), &n), "matrix_size");
    if (n != k) throw ConfigError("matrix is " + std::to_string(n) + "x" + std::to_string(n) + " but the IFS has " + std::to_string(k) + " maps");
    return p;
}

Set bridged(Set s, double merge_eps) {
    ifslab_set* out = nullptr;
    check(ifslab_set_bridge_gaps(s.get(), merge_eps, &out), "bridge_gaps");
    return Set(out);
}

std::size_t count(const ifslab_set* s) {
    std::size_t n = 0;
    check(ifslab_set_count(s, &n), "set_count");
    return n;
}

double hausdorff(const ifslab_set* a, const ifslab_set* b) {
    double d = 0;
    check(ifslab_hausdorff(a, b, &d), "hausdorff");
    return d;
}

std::vector<double> masses(const ifslab_measure* m) {
    std::size_t n = 0;
    check(ifslab_measure_bins(m, &n), "measure_bins");
    std::vector<double> out(n);
    check(ifslab_measure_masses(m, out.data(), n), "measure_masses");
    return out;
}

void head(Report& r, const char* command, const RunConfig& cfg, const ifslab_ifs* f) {
    const auto [lo, hi] = ifs_domain(f);
    r.add("command", command);
    r.add("ifs", cfg.preset ? *cfg.preset : std::string("inline"));
    r.add("k", ifs_size(f));
    r.add("domain_lo", lo);
    r.add("domain_hi", hi);
}

void finish(const Context& ctx, const Report& r) {
    write_atomic(ctx.out_dir / "report.txt", r.str());
    std::cout << r.str();
}

struct Target {
    Set atoms, undecided;
    bool complete = false, budget_exhausted = false;
    int depth = 0;
    std::size_t atom_words = 0;
};

Target run_target(const ifslab_ifs* f, double tol, int max_depth, const Budget& budget) {
    ifslab_target_result r{};
    check(ifslab_target_approx(f, tol, max_depth, 0, budget.remaining(), &r), "target_approx");
    Target t;
    t.atoms = Set(r.atoms);
    t.undecided = Set(r.undecided);
    t.complete = r.complete != 0;
    t.budget_exhausted = r.budget_exhausted != 0;
    t.depth = r.depth_reached;
    t.atom_words = r.atom_words;
    return t;
}

}  // namespace

int exit_code_for(int status) {
    switch (status) {
        case IFSLAB_E_BUDGET:
        case IFSLAB_E_CONVERGENCE:
        case IFSLAB_E_OVERFLOW:
            return kIncomplete;
        case IFSLAB_E_INTERNAL:
            return kInternal;
        default:
            return kConfig;
    }
}

int cmd_target(const Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    const Budget budget(cfg.budget);
    const Ifs f = build_ifs(cfg);
    const int max_depth = cfg.max_depth.value_or(40);
    Target t = run_target(f.get(), cfg.tol, max_depth, budget);
    const Set atoms = bridged(std::move(t.atoms), cfg.merge_eps);
    const Set undecided = bridged(std::move(t.undecided), cfg.merge_eps);
    write_atomic(ctx.out_dir / "atoms.csv", set_csv(atoms.get()));
    write_atomic(ctx.out_dir / "undecided.csv", set_csv(undecided.get()));
    Report r;
    head(r, "target", cfg, f.get());
    r.add("tol", cfg.tol);
    r.add("max_depth", max_depth);
    r.add("atoms", count(atoms.get()));
    r.add("atom_words", t.atom_words);
    r.add("undecided", count(undecided.get()));
    r.add("depth_reached", t.depth);
    r.add("complete", t.complete);
    r.add("budget_exhausted", t.budget_exhausted);
    finish(ctx, r);
    return t.complete ? kOk : kIncomplete;
}

int cmd_attractor(const Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    const Budget budget(cfg.budget);
    const Ifs f = build_ifs(cfg);
    const auto [lo, hi] = ifs_domain(f.get());
    ifslab_set* raw = nullptr;
    check(ifslab_set_whole(lo, hi, &raw), "set_whole");
    const Set whole(raw);
    int iterations = 0, converged = 0;
    check(ifslab_star_set(f.get(), whole.get(), cfg.tol, cfg.max_iter, &raw, &iterations, &converged), "star_set");
    const Set star = bridged(Set(raw), cfg.merge_eps);
    write_atomic(ctx.out_dir / "star_set.csv", set_csv(star.get()));

    Report r;
    head(r, "attractor", cfg, f.get());
    r.add("tol", cfg.tol);
    r.add("star_parts", count(star.get()));
    r.add("star_iterations", iterations);
    r.add("star_converged", converged != 0);

    const int max_depth = cfg.max_depth.value_or(40);
    Target t = run_target(f.get(), cfg.tol, max_depth, budget);
    r.add("target_atoms", count(t.atoms.get()));
    r.add("target_complete", t.complete);
    bool incomplete = !converged || t.budget_exhausted;
    if (count(t.atoms.get()) == 0) {
        r.add("conley", "skipped");
        r.add("reason", "no target atoms at this tolerance");
    } else {
        r.add("star_to_atoms_hausdorff", hausdorff(star.get(), t.atoms.get()));
        int verdict = 0, conley_iter = 0;
        double dist = 0;
        ifslab_set* residual = nullptr;
        check(ifslab_conley_probe(f.get(), t.atoms.get(), cfg.conley_eps, cfg.tol, cfg.max_iter, &verdict, &residual,
                                  &dist, &conley_iter),
              "conley_probe");
        const Set res(residual);
        const char* names[] = {"attracts", "escapes", "inconclusive"};
        r.add("conley_eps", cfg.conley_eps);
        r.add("conley", names[verdict]);
        r.add("conley_distance", dist);
        r.add("conley_iterations", conley_iter);
        r.add("conley_residual_parts", count(res.get()));
        for (const auto& [a, b] : set_parts(res.get())) r.add("conley_residual", "[" + num(a) + "," + num(b) + "]");
        int stable = 0, invariant = 0;
        check(ifslab_stability_probe(f.get(), t.atoms.get(), cfg.conley_eps, cfg.conley_eps / 5, cfg.max_iter, &stable),
              "stability_probe");
        check(ifslab_invariance_check(f.get(), t.atoms.get(), cfg.tol, &invariant), "invariance_check");
        r.add("stable", stable != 0);
        r.add("invariant", invariant != 0);
    }
    if (budget.expired()) incomplete = true;
    finish(ctx, r);
    return incomplete ? kIncomplete : kOk;
}

int cmd_chaos(const Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    const Budget budget(cfg.budget);
    const Ifs f = build_ifs(cfg);
    const int k = ifs_size(f.get());
    const auto [lo, hi] = ifs_domain(f.get());
    const double x0 = cfg.x0.value_or(0.5 * (lo + hi));
    if (cfg.tail >= cfg.samples) throw ConfigError("tail must be smaller than samples");
    const double resolution = cfg.resolution.value_or(cfg.tol);

    ifslab_stream* sraw = nullptr;
    if (cfg.mode == "disjunctive") {
        check(ifslab_stream_disjunctive(k, &sraw), "stream");
    } else {
        const auto w = weights_for(cfg, k);
        if (ifslab_stream_bernoulli(w.data(), w.size(), cfg.seed, &sraw) != IFSLAB_OK)
            throw ConfigError(std::string("weights: ") + ifslab_last_error());
    }
    const Stream stream(sraw);
    std::vector<double> pts(cfg.samples);
    if (ifslab_orbit(f.get(), x0, stream.get(), pts.size(), pts.data()) != IFSLAB_OK)
        throw ConfigError(std::string("x0: ") + ifslab_last_error());
    ifslab_set* craw = nullptr;
    check(ifslab_tail_cover(pts.data(), pts.size(), lo, hi, cfg.tail, resolution, &craw), "tail_cover");
    const Set cover = bridged(Set(craw), cfg.merge_eps);

    std::string orbit_csv = "n,x\n";
    for (std::size_t i = 0; i < pts.size(); ++i) orbit_csv += std::to_string(i) + "," + num(pts[i]) + "\n";
    write_atomic(ctx.out_dir / "orbit.csv", orbit_csv);
    write_atomic(ctx.out_dir / "tail.csv", set_csv(cover.get()));
    write_atomic(ctx.out_dir / "density.ppm", orbit_ppm(pts, lo, hi));

    Report r;
    head(r, "chaos", cfg, f.get());
    r.add("mode", cfg.mode);
    if (cfg.mode == "bernoulli") r.add("seed", static_cast<std::size_t>(cfg.seed));
    r.add("x0", x0);
    r.add("n", cfg.samples);
    r.add("tail_from", cfg.tail);
    r.add("resolution", resolution);
    r.add("tail_parts", count(cover.get()));

    Set reference;
    std::string ref_source;
    if (cfg.reference_path) {
        double rlo = 0, rhi = 0;
        const auto parts = read_set_csv(*cfg.reference_path, &rlo, &rhi);
        std::vector<double> los, his;
        for (const auto& [a, b] : parts) los.push_back(a), his.push_back(b);
        if (ifslab_set_new(lo, hi, los.data(), his.data(), los.size(), &craw) != IFSLAB_OK)
            throw ConfigError("reference: " + std::string(ifslab_last_error()));
        reference = Set(craw);
        ref_source = *cfg.reference_path;
    } else {
        Target t = run_target(f.get(), cfg.tol, cfg.max_depth.value_or(40), budget);
        if (t.complete) {
            reference = std::move(t.atoms);
            ref_source = "target_atoms";
        }
    }
    if (!reference) {
        r.add("verdict", "unavailable");
        r.add("reason", "target set incomplete at this tolerance; pass a reference set");
        finish(ctx, r);
        return kIncomplete;
    }
    const double d = hausdorff(cover.get(), reference.get());
    const double bound = std::max(2 * resolution, 2 * cfg.tol);
    r.add("reference", ref_source);
    r.add("hausdorff", d);
    r.add("bound", bound);
    r.add("verdict", d <= bound ? "pass" : "fail");
    finish(ctx, r);
    return budget.expired() ? kIncomplete : kOk;
}

int cmd_stationary(const Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    const Budget budget(cfg.budget);
    const Ifs f = build_ifs(cfg);
    const int k = ifs_size(f.get());
    const auto [lo, hi] = ifs_domain(f.get());
    const auto w = weights_for(cfg, k);

    ifslab_measure* raw = nullptr;
    check(ifslab_measure_uniform(lo, hi, cfg.bins, &raw), "measure_uniform");
    Measure mu(raw);
    int it = 0;
    bool converged = false;
    double step = 0;
    while (it < cfg.max_iter && !budget.expired()) {
        if (ifslab_markov_step(f.get(), w.data(), w.size(), mu.get(), &raw) != IFSLAB_OK)
            throw ConfigError(std::string("weights: ") + ifslab_last_error());
        Measure next(raw);
        check(ifslab_w1_distance(mu.get(), next.get(), &step), "w1_distance");
        mu = std::move(next);
        ++it;
        if (step <= cfg.w1_tol) {
            converged = true;
            break;
        }
    }
    double mean = 0, var = 0;
    check(ifslab_measure_moments(mu.get(), &mean, &var), "moments");
    ifslab_set* sraw = nullptr;
    check(ifslab_support_estimate(mu.get(), 0.01, &sraw), "support_estimate");
    const Set support = bridged(Set(sraw), cfg.merge_eps);
    const auto m = masses(mu.get());
    write_atomic(ctx.out_dir / "measure.csv", measure_csv(lo, hi, m));
    write_atomic(ctx.out_dir / "support.csv", set_csv(support.get()));
    write_atomic(ctx.out_dir / "density.ppm", density_ppm(m));

    Report r;
    head(r, "stationary", cfg, f.get());
    std::string ws;
    for (double x : w) ws += (ws.empty() ? "" : ",") + num(x);
    r.add("weights", ws);
    r.add("bins", cfg.bins);
    r.add("iterations", it);
    r.add("last_w1_step", step);
    r.add("converged", converged);
    r.add("mean", mean);
    r.add("variance", var);
    r.add("support_parts", count(support.get()));

    double unresolved = 0;
    const int st = ifslab_coding_pushforward(f.get(), w.data(), w.size(), cfg.samples, cfg.prefix, 1e-9, cfg.bins,
                                             cfg.seed, cfg.workers, &raw, &unresolved);
    r.add("samples", cfg.samples);
    r.add("seed", static_cast<std::size_t>(cfg.seed));
    r.add("unresolved_fraction", unresolved);
    if (st == IFSLAB_E_DEGENERATE_OUTPUT) {
        r.add("sampled", "degenerate");
    } else {
        check(st, "coding_pushforward");
        const Measure mc(raw);
        double mc_mean = 0, mc_var = 0, w1 = 0;
        check(ifslab_measure_moments(mc.get(), &mc_mean, &mc_var), "moments");
        check(ifslab_w1_distance(mu.get(), mc.get(), &w1), "w1_distance");
        r.add("sampled_mean", mc_mean);
        r.add("sampled_variance", mc_var);
        r.add("w1_operator_vs_sampled", w1);
    }
    finish(ctx, r);
    return converged ? kOk : kIncomplete;
}

int cmd_recurrent(const Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    const Budget budget(cfg.budget);
    const Ifs f = build_ifs(cfg);
    const int k = ifs_size(f.get());
    const auto [lo, hi] = ifs_domain(f.get());
    const Matrix p = matrix_for(cfg, k, true);
    int irreducible = 0, primitive = 0;
    check(ifslab_is_irreducible(p.get(), &irreducible), "is_irreducible");
    check(ifslab_is_primitive(p.get(), &primitive), "is_primitive");
    if (!irreducible) throw ConfigError("matrix is reducible; no unique stationary vector");
    std::vector<double> pbar(static_cast<std::size_t>(k));
    check(ifslab_stationary_vector(p.get(), pbar.data(), pbar.size()), "stationary_vector");
    ifslab_matrix* qraw = nullptr;
    check(ifslab_inverse_matrix(p.get(), pbar.data(), pbar.size(), &qraw), "inverse_matrix");
    const Matrix q(qraw);

    ifslab_hat* raw = nullptr;
    check(ifslab_hat_uniform(lo, hi, cfg.bins, pbar.data(), pbar.size(), &raw), "hat_uniform");
    Hat h(raw);
    int it = 0;
    bool converged = false;
    double step = 0;
    while (it < cfg.max_iter && !budget.expired()) {
        check(ifslab_generalized_markov_step(f.get(), p.get(), h.get(), &raw), "generalized_markov_step");
        Hat next(raw);
        check(ifslab_hat_w1_distance(h.get(), next.get(), &step), "hat_w1_distance");
        h = std::move(next);
        ++it;
        if (step <= cfg.w1_tol) {
            converged = true;
            break;
        }
    }
    std::string csv = "section,bin_lo,bin_hi,mass\n";
    std::vector<double> sec(cfg.bins);
    const double width = (hi - lo) / static_cast<double>(cfg.bins);
    for (int s = 1; s <= k; ++s) {
        check(ifslab_hat_section(h.get(), s, sec.data(), sec.size()), "hat_section");
        for (std::size_t b = 0; b < cfg.bins; ++b) {
            const double bhi = b + 1 == cfg.bins ? hi : lo + width * static_cast<double>(b + 1);
            csv += std::to_string(s) + "," + num(lo + width * static_cast<double>(b)) + "," + num(bhi) + "," + num(sec[b]) + "\n";
        }
    }
    write_atomic(ctx.out_dir / "hat_measure.csv", csv);

    Report r;
    head(r, "recurrent", cfg, f.get());
    r.add("irreducible", irreducible != 0);
    r.add("primitive", primitive != 0);
    std::vector<double> qe(static_cast<std::size_t>(k * k)), sm(static_cast<std::size_t>(k));
    check(ifslab_matrix_entries(q.get(), qe.data(), qe.size()), "matrix_entries");
    check(ifslab_hat_section_masses(h.get(), sm.data(), sm.size()), "section_masses");
    auto join = [](const std::vector<double>& v) {
        std::string s;
        for (double x : v) s += (s.empty() ? "" : ",") + num(x);
        return s;
    };
    r.add("stationary_vector", join(pbar));
    r.add("inverse_matrix", join(qe));
    r.add("bins", cfg.bins);
    r.add("iterations", it);
    r.add("last_w1_step", step);
    r.add("converged", converged);
    r.add("section_masses", join(sm));

    double unresolved = 0;
    const int st = ifslab_coding_pushforward_markov(f.get(), q.get(), pbar.data(), cfg.samples, cfg.prefix, 1e-9,
                                                    cfg.bins, cfg.seed, cfg.workers, &raw, &unresolved);
    r.add("samples", cfg.samples);
    r.add("seed", static_cast<std::size_t>(cfg.seed));
    r.add("unresolved_fraction", unresolved);
    if (st == IFSLAB_E_DEGENERATE_OUTPUT) {
        r.add("sampled", "degenerate");
    } else {
        check(st, "coding_pushforward_markov");
        const Hat mc(raw);
        double w1 = 0;
        check(ifslab_hat_w1_distance(h.get(), mc.get(), &w1), "hat_w1_distance");
        r.add("w1_operator_vs_sampled", w1);
    }
    finish(ctx, r);
    return converged ? kOk : kIncomplete;
}

int cmd_split(const Context& ctx) {
    const RunConfig& cfg = ctx.cfg;
    const Ifs f = build_ifs(cfg);
    const int k = ifs_size(f.get());
    const auto dom = ifs_domain(f.get());
    const auto [jlo, jhi] = cfg.j.value_or(dom);
    const int depth = cfg.max_depth.value_or(10);
    const Matrix p = matrix_for(cfg, k, false);
    std::vector<double> pbar(static_cast<std::size_t>(k));
    check(ifslab_stationary_vector(p.get(), pbar.data(), pbar.size()), "stationary_vector");

    Report r;
    head(r, "split", cfg, f.get());
    r.add("j_lo", jlo);
    r.add("j_hi", jhi);
    r.add("max_depth", depth);
    const std::size_t cap = static_cast<std::size_t>(depth);
    std::vector<int> u(cap), v(cap);
    std::size_t ul = 0, vl = 0;
    int found = 0;
    const std::string none = "none-up-to-depth " + std::to_string(depth);

    const int st = ifslab_split_check(f.get(), p.get(), pbar.data(), jlo, jhi, depth, &found, u.data(), &ul, v.data(),
                                      &vl, cap);
    if (st == IFSLAB_E_PRECONDITION) {
        r.add("split", "not-applicable");
        r.add("split_reason", ifslab_last_error());
    } else {
        check(st, "split_check");
        r.add("split", found ? word_str(u.data(), ul, k) + " " + word_str(v.data(), vl, k) : none);
        check(ifslab_separability_check(f.get(), jlo, jhi, depth, &found, u.data(), &ul, v.data(), &vl, cap),
              "separability_check");
        r.add("separability", found ? word_str(u.data(), ul, k) + " " + word_str(v.data(), vl, k) : none);
        for (int s = 1; s <= k; ++s) {
            int rigid = 0;
            check(ifslab_rigidity_check(f.get(), p.get(), pbar.data(), s, cfg.tol, depth, &rigid), "rigidity_check");
            r.add("rigidity_split_on_" + std::to_string(s), rigid != 0);
        }
    }
    check(ifslab_weakly_hyperbolic_witness(f.get(), cfg.tol, depth, &found, u.data(), cap, &ul), "witness");
    r.add("weakly_hyperbolic_witness", found ? word_str(u.data(), ul, k) : none);
    ifslab_set* raw = nullptr;
    check(ifslab_common_fixed_points(f.get(), cfg.tol, 1000, &raw), "common_fixed_points");
    const Set fixed(raw);
    r.add("common_fixed_point_cells", count(fixed.get()));
    for (const auto& [a, b] : set_parts(fixed.get())) r.add("common_fixed_point", "[" + num(a) + "," + num(b) + "]");
    finish(ctx, r);
    return kOk;
}

}  // namespace ifscli
