#include "ifslab/ifslab.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "ifslab/chaos.hpp"
#include "ifslab/error.hpp"
#include "ifslab/ifs.hpp"
#include "ifslab/measures.hpp"
#include "ifslab/stochastic.hpp"

using namespace ifslab;

struct ifslab_map {
    PiecewiseMonotoneMap map;
};
struct ifslab_ifs {
    Ifs ifs;
};
struct ifslab_set {
    IntervalSet set;
};
struct ifslab_matrix {
    TransitionMatrix p;
};
struct ifslab_stream {
    SymbolStream s;
};
struct ifslab_measure {
    GridMeasure m;
};
struct ifslab_hat {
    HatMeasure h;
};

namespace {

thread_local std::string g_last_error;

template <class F>
int guard(F&& body) {
    try {
        body();
        g_last_error.clear();
        return IFSLAB_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return static_cast<int>(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return IFSLAB_E_OVERFLOW;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return IFSLAB_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return IFSLAB_E_INTERNAL;
    }
}

template <class... P>
void need(const P*... ptrs) {
    if (((ptrs == nullptr) || ...)) fail(ErrorCode::Usage, "null argument");
}

Word make_word(const ifslab_ifs* f, const int* w, std::size_t len) {
    if (len > 0) need(w);
    return Word(f->ifs.size(), std::vector<int>(w, w + len));
}

std::vector<double> vec(const double* p, std::size_t n) {
    if (n > 0) need(p);
    return std::vector<double>(p, p + n);
}

void copy_out(std::span<const double> src, double* out, std::size_t capacity) {
    need(out);
    if (capacity < src.size()) fail(ErrorCode::Shape, "output buffer too small");
    std::copy(src.begin(), src.end(), out);
}

void copy_word(const Word& w, int* out, std::size_t* len, std::size_t capacity) {
    need(out, len);
    if (capacity < w.length()) fail(ErrorCode::Shape, "word buffer too small");
    std::copy(w.symbols().begin(), w.symbols().end(), out);
    *len = w.length();
}

int to_int(std::size_t n) {
    if (n > static_cast<std::size_t>(1) << 30) fail(ErrorCode::Parameter, "size too large");
    return static_cast<int>(n);
}

CodingOptions coding_options(size_t n_samples, int prefix_len, double tol, size_t n_bins, uint64_t seed, int workers) {
    CodingOptions o;
    o.n_samples = n_samples;
    o.prefix_len = prefix_len;
    o.tol = tol;
    o.n_bins = to_int(n_bins);
    o.seed = seed;
    o.workers = workers;
    return o;
}

/// Runs the sampler and reports the unresolved fraction even when every
/// sample is unresolved.
template <class Sink>
void run_coding(const Ifs& f, const CodingSource& src, const CodingOptions& o, double* unresolved, Sink sink) {
    try {
        auto r = coding_pushforward(f, src, o);
        if (unresolved) *unresolved = r.unresolved_fraction;
        sink(r);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::DegenerateOutput && unresolved) *unresolved = 1.0;
        throw;
    }
}

}  // namespace

extern "C" {

const char* ifslab_last_error(void) { return g_last_error.c_str(); }

const char* ifslab_status_name(int status) {
    if (status == IFSLAB_OK) return "ok";
    if (status == IFSLAB_E_INTERNAL) return "internal";
    if (status >= 1 && status <= 18) return to_string(static_cast<ErrorCode>(status));
    return "unknown";
}

int ifslab_map_vertices(const double* xs, const double* ys, size_t n, ifslab_map** out) {
    return guard([&] {
        need(xs, ys, out);
        std::vector<std::pair<double, double>> v;
        for (std::size_t i = 0; i < n; ++i) v.emplace_back(xs[i], ys[i]);
        *out = new ifslab_map{PiecewiseMonotoneMap::from_vertices(v)};
    });
}

int ifslab_map_quadratic(double lo, double hi, double a, double b, double c, ifslab_map** out) {
    return guard([&] {
        need(out);
        *out = new ifslab_map{PiecewiseMonotoneMap::quadratic({lo, hi}, a, b, c)};
    });
}

void ifslab_map_free(ifslab_map* m) { delete m; }

int ifslab_ifs_new(double lo, double hi, const ifslab_map* const* maps, size_t k, const char* name, ifslab_ifs** out) {
    return guard([&] {
        need(out);
        if (k > 0) need(maps);
        std::vector<PiecewiseMonotoneMap> ms;
        for (std::size_t i = 0; i < k; ++i) {
            need(maps[i]);
            ms.push_back(maps[i]->map);
        }
        *out = new ifslab_ifs{Ifs({lo, hi}, std::move(ms), name ? name : "")};
    });
}

int ifslab_ifs_preset(const char* name, ifslab_ifs** out) {
    return guard([&] {
        need(name, out);
        *out = new ifslab_ifs{preset(name)};
    });
}

void ifslab_ifs_free(ifslab_ifs* f) { delete f; }

const char* ifslab_preset_names(void) {
    static const std::string joined = [] {
        std::string s;
        for (const auto& n : preset_names()) s += n + "\n";
        return s;
    }();
    return joined.c_str();
}

int ifslab_ifs_size(const ifslab_ifs* f, int* k) {
    return guard([&] {
        need(f, k);
        *k = f->ifs.size();
    });
}

int ifslab_ifs_domain(const ifslab_ifs* f, double* lo, double* hi) {
    return guard([&] {
        need(f, lo, hi);
        *lo = f->ifs.domain().lo;
        *hi = f->ifs.domain().hi;
    });
}

int ifslab_ifs_eval(const ifslab_ifs* f, int symbol, double x, double* y) {
    return guard([&] {
        need(f, y);
        if (!f->ifs.domain().contains(x)) fail(ErrorCode::Domain, "point outside the domain");
        *y = f->ifs.map(symbol)(x);
    });
}

int ifslab_set_new(double dom_lo, double dom_hi, const double* los, const double* his, size_t n, ifslab_set** out) {
    return guard([&] {
        need(out);
        if (n > 0) need(los, his);
        std::vector<Interval> raw;
        for (std::size_t i = 0; i < n; ++i) raw.push_back({los[i], his[i]});
        NormalizeOptions opts;
        opts.max_parts = std::max(opts.max_parts, n);
        *out = new ifslab_set{IntervalSet::normalize(std::move(raw), {dom_lo, dom_hi}, opts)};
    });
}

int ifslab_set_whole(double dom_lo, double dom_hi, ifslab_set** out) {
    return guard([&] {
        need(out);
        if (!(dom_lo < dom_hi)) fail(ErrorCode::Domain, "domain must satisfy lo < hi");
        *out = new ifslab_set{IntervalSet::whole({dom_lo, dom_hi})};
    });
}

void ifslab_set_free(ifslab_set* s) { delete s; }

int ifslab_set_count(const ifslab_set* s, size_t* n) {
    return guard([&] {
        need(s, n);
        *n = s->set.size();
    });
}

int ifslab_set_part(const ifslab_set* s, size_t i, double* lo, double* hi) {
    return guard([&] {
        need(s, lo, hi);
        if (i >= s->set.size()) fail(ErrorCode::Index, "part index out of range");
        *lo = s->set.parts()[i].lo;
        *hi = s->set.parts()[i].hi;
    });
}

int ifslab_set_domain(const ifslab_set* s, double* lo, double* hi) {
    return guard([&] {
        need(s, lo, hi);
        *lo = s->set.domain().lo;
        *hi = s->set.domain().hi;
    });
}

int ifslab_set_measure(const ifslab_set* s, double* m) {
    return guard([&] {
        need(s, m);
        *m = measure(s->set);
    });
}

int ifslab_set_diam(const ifslab_set* s, double* d) {
    return guard([&] {
        need(s, d);
        *d = diam(s->set);
    });
}

int ifslab_hausdorff(const ifslab_set* a, const ifslab_set* b, double* d) {
    return guard([&] {
        need(a, b, d);
        *d = hausdorff(a->set, b->set);
    });
}

int ifslab_set_unite(const ifslab_set* a, const ifslab_set* b, ifslab_set** out) {
    return guard([&] {
        need(a, b, out);
        *out = new ifslab_set{unite(a->set, b->set)};
    });
}

int ifslab_set_fatten(const ifslab_set* a, double eps, ifslab_set** out) {
    return guard([&] {
        need(a, out);
        *out = new ifslab_set{fatten(a->set, eps)};
    });
}

int ifslab_set_bridge_gaps(const ifslab_set* a, double max_gap, ifslab_set** out) {
    return guard([&] {
        need(a, out);
        *out = new ifslab_set{bridge_gaps(a->set, max_gap)};
    });
}

int ifslab_bh_apply(const ifslab_ifs* f, const ifslab_set* a, ifslab_set** out) {
    return guard([&] {
        need(f, a, out);
        *out = new ifslab_set{bh_apply(f->ifs, a->set)};
    });
}

int ifslab_star_set(const ifslab_ifs* f, const ifslab_set* a, double tol, int max_iter, ifslab_set** out,
                    int* iterations, int* converged) {
    return guard([&] {
        need(f, a, out);
        auto r = star_set(f->ifs, a->set, tol, max_iter);
        if (iterations) *iterations = r.iterations;
        if (converged) *converged = r.converged ? 1 : 0;
        *out = new ifslab_set{std::move(r.set)};
    });
}

int ifslab_word_image(const ifslab_ifs* f, const int* word, size_t len, double* lo, double* hi) {
    return guard([&] {
        need(f, lo, hi);
        const Interval iv = word_interval(f->ifs, make_word(f, word, len));
        *lo = iv.lo;
        *hi = iv.hi;
    });
}

int ifslab_fibre_approx(const ifslab_ifs* f, const ifslab_stream* s, int depth, ifslab_set** out) {
    return guard([&] {
        need(f, s, out);
        *out = new ifslab_set{fibre_approx(f->ifs, s->s, depth)};
    });
}

int ifslab_lipschitz_exact(const ifslab_ifs* f, const int* word, size_t len, double* lip) {
    return guard([&] {
        need(f, lip);
        *lip = lipschitz_exact(f->ifs, make_word(f, word, len));
    });
}

int ifslab_target_approx(const ifslab_ifs* f, double tol, int max_depth, size_t max_pending, double budget_seconds,
                         ifslab_target_result* out) {
    return guard([&] {
        need(f, out);
        TargetOptions opts;
        if (max_pending > 0) opts.max_pending = max_pending;
        if (budget_seconds > 0) opts.deadline = Deadline::after_seconds(budget_seconds);
        auto r = target_approx(f->ifs, tol, max_depth, opts);
        auto atoms = std::make_unique<ifslab_set>(ifslab_set{std::move(r.atoms)});
        auto undecided = std::make_unique<ifslab_set>(ifslab_set{std::move(r.undecided)});
        out->atoms = atoms.release();
        out->undecided = undecided.release();
        out->complete = r.complete ? 1 : 0;
        out->budget_exhausted = r.budget_exhausted ? 1 : 0;
        out->depth_reached = r.depth_reached;
        out->atom_words = r.atom_words;
    });
}

int ifslab_weakly_hyperbolic_witness(const ifslab_ifs* f, double tol, int max_depth, int* found, int* word,
                                     size_t capacity, size_t* len) {
    return guard([&] {
        need(f, found);
        const auto w = weakly_hyperbolic_witness(f->ifs, tol, max_depth);
        *found = w ? 1 : 0;
        if (w) copy_word(*w, word, len, capacity);
    });
}

int ifslab_conley_probe(const ifslab_ifs* f, const ifslab_set* a, double eps, double tol, int max_iter, int* verdict,
                        ifslab_set** residual, double* distance, int* iterations) {
    return guard([&] {
        need(f, a, verdict);
        auto r = conley_probe(f->ifs, a->set, eps, tol, max_iter);
        *verdict = static_cast<int>(r.verdict);
        if (distance) *distance = r.distance;
        if (iterations) *iterations = r.iterations;
        if (residual) *residual = new ifslab_set{std::move(r.residual)};
    });
}

int ifslab_stability_probe(const ifslab_ifs* f, const ifslab_set* a, double v_eps, double v0_eps, int n_iter,
                           int* stable) {
    return guard([&] {
        need(f, a, stable);
        *stable = stability_probe(f->ifs, a->set, v_eps, v0_eps, n_iter) ? 1 : 0;
    });
}

int ifslab_invariance_check(const ifslab_ifs* f, const ifslab_set* a, double tol, int* invariant) {
    return guard([&] {
        need(f, a, invariant);
        *invariant = invariance_check(f->ifs, a->set, tol) ? 1 : 0;
    });
}

int ifslab_common_fixed_points(const ifslab_ifs* f, double tol, int grid_n, ifslab_set** out) {
    return guard([&] {
        need(f, out);
        *out = new ifslab_set{common_fixed_points(f->ifs, tol, grid_n)};
    });
}

int ifslab_stream_disjunctive(int k, ifslab_stream** out) {
    return guard([&] {
        need(out);
        *out = new ifslab_stream{SymbolStream::disjunctive(k)};
    });
}

int ifslab_stream_constant(int k, int symbol, ifslab_stream** out) {
    return guard([&] {
        need(out);
        *out = new ifslab_stream{SymbolStream::constant(k, symbol)};
    });
}

int ifslab_stream_periodic(int k, const int* word, size_t len, ifslab_stream** out) {
    return guard([&] {
        need(out);
        if (len > 0) need(word);
        *out = new ifslab_stream{SymbolStream::periodic(Word(k, std::vector<int>(word, word + len)))};
    });
}

int ifslab_stream_bernoulli(const double* weights, size_t k, uint64_t seed, ifslab_stream** out) {
    return guard([&] {
        need(out);
        *out = new ifslab_stream{SymbolStream::bernoulli(vec(weights, k), seed)};
    });
}

void ifslab_stream_free(ifslab_stream* s) { delete s; }

int ifslab_stream_at(const ifslab_stream* s, size_t n, int* symbol) {
    return guard([&] {
        need(s, symbol);
        *symbol = s->s.at(n);
    });
}

int ifslab_matrix_new(int k, const double* entries, ifslab_matrix** out) {
    return guard([&] {
        need(out);
        if (k < 1) fail(ErrorCode::InvalidAlphabet, "matrix size must be >= 1");
        *out = new ifslab_matrix{TransitionMatrix(k, vec(entries, static_cast<std::size_t>(k) * static_cast<std::size_t>(k)))};
    });
}

int ifslab_matrix_bernoulli(const double* weights, size_t k, ifslab_matrix** out) {
    return guard([&] {
        need(out);
        const auto w = vec(weights, k);
        *out = new ifslab_matrix{TransitionMatrix::bernoulli(w)};
    });
}

int ifslab_matrix_read_csv(const char* path, ifslab_matrix** out) {
    return guard([&] {
        need(path, out);
        std::ifstream in(path);
        if (!in) fail(ErrorCode::Io, std::string("cannot open ") + path);
        *out = new ifslab_matrix{read_matrix_csv(in)};
    });
}

void ifslab_matrix_free(ifslab_matrix* p) { delete p; }

int ifslab_matrix_size(const ifslab_matrix* p, int* k) {
    return guard([&] {
        need(p, k);
        *k = p->p.size();
    });
}

int ifslab_matrix_entries(const ifslab_matrix* p, double* out, size_t capacity) {
    return guard([&] {
        need(p);
        copy_out(p->p.entries(), out, capacity);
    });
}

int ifslab_stationary_vector(const ifslab_matrix* p, double* out, size_t capacity) {
    return guard([&] {
        need(p);
        copy_out(stationary_vector(p->p), out, capacity);
    });
}

int ifslab_is_irreducible(const ifslab_matrix* p, int* result) {
    return guard([&] {
        need(p, result);
        *result = is_irreducible(p->p) ? 1 : 0;
    });
}

int ifslab_is_primitive(const ifslab_matrix* p, int* result) {
    return guard([&] {
        need(p, result);
        *result = is_primitive(p->p) ? 1 : 0;
    });
}

int ifslab_inverse_matrix(const ifslab_matrix* p, const double* pbar, size_t k, ifslab_matrix** out) {
    return guard([&] {
        need(p, out);
        const auto v = vec(pbar, k);
        *out = new ifslab_matrix{inverse_matrix(p->p, v)};
    });
}

int ifslab_split_check(const ifslab_ifs* f, const ifslab_matrix* p, const double* pbar, double j_lo, double j_hi,
                       int max_depth, int* found, int* u, size_t* u_len, int* v, size_t* v_len, size_t capacity) {
    return guard([&] {
        need(f, p, found);
        const auto pb = vec(pbar, static_cast<std::size_t>(p->p.size()));
        const auto r = split_check(f->ifs, p->p, pb, {j_lo, j_hi}, max_depth);
        *found = r ? 1 : 0;
        if (r) {
            copy_word(r->first, u, u_len, capacity);
            copy_word(r->second, v, v_len, capacity);
        }
    });
}

int ifslab_separability_check(const ifslab_ifs* f, double j_lo, double j_hi, int max_depth, int* found, int* u,
                              size_t* u_len, int* v, size_t* v_len, size_t capacity) {
    return guard([&] {
        need(f, found);
        const auto r = separability_check(f->ifs, {j_lo, j_hi}, max_depth);
        *found = r ? 1 : 0;
        if (r) {
            copy_word(r->first, u, u_len, capacity);
            copy_word(r->second, v, v_len, capacity);
        }
    });
}

int ifslab_rigidity_check(const ifslab_ifs* f, const ifslab_matrix* p, const double* pbar, int symbol, double tol,
                          int max_depth, int* split_on_symbol) {
    return guard([&] {
        need(f, p, split_on_symbol);
        const auto pb = vec(pbar, static_cast<std::size_t>(p->p.size()));
        *split_on_symbol = rigidity_check(f->ifs, p->p, pb, symbol, tol, max_depth).split_on_symbol ? 1 : 0;
    });
}

int ifslab_measure_new(double lo, double hi, const double* masses, size_t n, ifslab_measure** out) {
    return guard([&] {
        need(out);
        *out = new ifslab_measure{GridMeasure({lo, hi}, vec(masses, n))};
    });
}

int ifslab_measure_uniform(double lo, double hi, size_t n, ifslab_measure** out) {
    return guard([&] {
        need(out);
        if (!(lo < hi)) fail(ErrorCode::Domain, "measure domain must satisfy lo < hi");
        *out = new ifslab_measure{GridMeasure::uniform({lo, hi}, to_int(n))};
    });
}

int ifslab_measure_dirac(double lo, double hi, size_t n, double x, ifslab_measure** out) {
    return guard([&] {
        need(out);
        if (!(lo < hi)) fail(ErrorCode::Domain, "measure domain must satisfy lo < hi");
        *out = new ifslab_measure{GridMeasure::dirac({lo, hi}, to_int(n), x)};
    });
}

void ifslab_measure_free(ifslab_measure* m) { delete m; }

int ifslab_measure_bins(const ifslab_measure* m, size_t* n) {
    return guard([&] {
        need(m, n);
        *n = static_cast<std::size_t>(m->m.bins());
    });
}

int ifslab_measure_masses(const ifslab_measure* m, double* out, size_t capacity) {
    return guard([&] {
        need(m);
        copy_out(m->m.masses(), out, capacity);
    });
}

int ifslab_measure_moments(const ifslab_measure* m, double* mean, double* variance) {
    return guard([&] {
        need(m, mean, variance);
        *mean = m->m.mean();
        *variance = m->m.variance();
    });
}

int ifslab_markov_step(const ifslab_ifs* f, const double* weights, size_t k, const ifslab_measure* mu,
                       ifslab_measure** out) {
    return guard([&] {
        need(f, mu, out);
        const auto w = vec(weights, k);
        *out = new ifslab_measure{markov_step(f->ifs, w, mu->m)};
    });
}

int ifslab_w1_distance(const ifslab_measure* mu, const ifslab_measure* nu, double* d) {
    return guard([&] {
        need(mu, nu, d);
        *d = w1_distance(mu->m, nu->m);
    });
}

int ifslab_support_estimate(const ifslab_measure* mu, double mass_tol, ifslab_set** out) {
    return guard([&] {
        need(mu, out);
        *out = new ifslab_set{support_estimate(mu->m, mass_tol)};
    });
}

int ifslab_coding_pushforward(const ifslab_ifs* f, const double* weights, size_t k, size_t n_samples, int prefix_len,
                              double tol, size_t n_bins, uint64_t seed, int workers, ifslab_measure** out,
                              double* unresolved_fraction) {
    return guard([&] {
        need(f, out);
        const auto src = CodingSource::bernoulli(vec(weights, k));
        run_coding(f->ifs, src, coding_options(n_samples, prefix_len, tol, n_bins, seed, workers), unresolved_fraction,
                   [&](CodingResult& r) { *out = new ifslab_measure{std::move(r.measure)}; });
    });
}

int ifslab_coding_pushforward_markov(const ifslab_ifs* f, const ifslab_matrix* q, const double* initial,
                                     size_t n_samples, int prefix_len, double tol, size_t n_bins, uint64_t seed,
                                     int workers, ifslab_hat** out, double* unresolved_fraction) {
    return guard([&] {
        need(f, q, out);
        const auto src = CodingSource::markov(q->p, vec(initial, static_cast<std::size_t>(q->p.size())));
        run_coding(f->ifs, src, coding_options(n_samples, prefix_len, tol, n_bins, seed, workers), unresolved_fraction,
                   [&](CodingResult& r) { *out = new ifslab_hat{std::move(*r.hat)}; });
    });
}

int ifslab_hat_uniform(double lo, double hi, size_t n_bins, const double* weights, size_t k, ifslab_hat** out) {
    return guard([&] {
        need(out);
        const auto w = vec(weights, k);
        *out = new ifslab_hat{HatMeasure::uniform({lo, hi}, to_int(n_bins), w)};
    });
}

int ifslab_hat_dirac(double lo, double hi, size_t n_bins, int k, int symbol, double x, ifslab_hat** out) {
    return guard([&] {
        need(out);
        *out = new ifslab_hat{HatMeasure::dirac({lo, hi}, to_int(n_bins), k, symbol, x)};
    });
}

void ifslab_hat_free(ifslab_hat* h) { delete h; }

int ifslab_hat_shape(const ifslab_hat* h, int* k, size_t* n_bins) {
    return guard([&] {
        need(h, k, n_bins);
        *k = h->h.sections();
        *n_bins = static_cast<std::size_t>(h->h.bins());
    });
}

int ifslab_hat_section(const ifslab_hat* h, int symbol, double* out, size_t capacity) {
    return guard([&] {
        need(h);
        copy_out(h->h.section(symbol), out, capacity);
    });
}

int ifslab_hat_section_masses(const ifslab_hat* h, double* out, size_t capacity) {
    return guard([&] {
        need(h);
        copy_out(h->h.section_masses(), out, capacity);
    });
}

int ifslab_hat_marginal(const ifslab_hat* h, ifslab_measure** out) {
    return guard([&] {
        need(h, out);
        *out = new ifslab_measure{h->h.marginal()};
    });
}

int ifslab_generalized_markov_step(const ifslab_ifs* f, const ifslab_matrix* p, const ifslab_hat* h,
                                   ifslab_hat** out) {
    return guard([&] {
        need(f, p, h, out);
        *out = new ifslab_hat{generalized_markov_step(f->ifs, p->p, h->h)};
    });
}

int ifslab_hat_w1_distance(const ifslab_hat* a, const ifslab_hat* b, double* d) {
    return guard([&] {
        need(a, b, d);
        *d = w1_distance(a->h, b->h);
    });
}

int ifslab_orbit(const ifslab_ifs* f, double x0, const ifslab_stream* s, size_t n, double* out) {
    return guard([&] {
        need(f, s, out);
        const auto o = orbit(f->ifs, x0, s->s, n);
        std::copy(o.points.begin(), o.points.end(), out);
    });
}

int ifslab_tail_cover(const double* points, size_t n, double dom_lo, double dom_hi, size_t from, double resolution,
                      ifslab_set** out) {
    return guard([&] {
        need(out);
        Orbit o;
        o.points = vec(points, n);
        if (!(dom_lo < dom_hi)) fail(ErrorCode::Domain, "domain must satisfy lo < hi");
        *out = new ifslab_set{tail_cover(o, {dom_lo, dom_hi}, from, resolution)};
    });
}

}  // extern "C"
