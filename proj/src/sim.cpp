#include "qclf/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qclf/construct.hpp"
#include "qclf/quantum.hpp"

namespace qclf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t DetRng::next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t x = state;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double DetRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

DetRng trial_rng(std::uint64_t master_seed, std::uint64_t point, std::uint64_t trial) {
    return DetRng(splitmix64(splitmix64(master_seed ^ (point * 0xD1342543DE82EF95ull)) ^ trial));
}

PauliError sample_error(std::int64_t n, double p, DetRng& rng) {
    if (p < 0.0 || p > 1.0) throw param_error("error probability must be in [0, 1]");
    PauliError err;
    err.x.assign(n, 0);
    err.z.assign(n, 0);
    for (std::int64_t i = 0; i < n; ++i) {
        double u = rng.uniform();
        if (u >= p) continue;
        if (u < p / 3) {
            err.x[i] = 1;  // X
        } else if (u < 2 * p / 3) {
            err.x[i] = 1;  // Y
            err.z[i] = 1;
        } else {
            err.z[i] = 1;  // Z
        }
    }
    return err;
}

std::vector<std::uint8_t> gf2_mat_vec(const SparseBinaryMatrix& h,
                                      const std::vector<std::uint8_t>& v) {
    if (static_cast<std::int64_t>(v.size()) != h.ncols)
        throw param_error("vector length does not match the matrix columns");
    std::vector<std::uint8_t> out(h.nrows, 0);
    for (const auto& [r, c] : h.entries) out[r] ^= v[c];
    return out;
}

Syndromes syndrome(const SparseBinaryMatrix& hx, const SparseBinaryMatrix& hz,
                   const PauliError& err) {
    if (hx.ncols != hz.ncols || static_cast<std::int64_t>(err.x.size()) != hx.ncols)
        throw param_error("syndrome: dimension mismatch");
    return Syndromes{gf2_mat_vec(hx, err.z), gf2_mat_vec(hz, err.x)};
}

BinaryBpDecoder::BinaryBpDecoder(const SparseBinaryMatrix& h)
    : nchecks_(h.nrows), nvars_(h.ncols) {
    auto rows = h.cols_by_row();
    auto cols = h.rows_by_col();
    int edge = 0;
    chk_off_.push_back(0);
    std::vector<std::vector<std::pair<int, int>>> var_adj(nvars_);
    for (std::int64_t r = 0; r < nchecks_; ++r) {
        for (std::int64_t c : rows[r]) {
            chk_var_.push_back(static_cast<int>(c));
            chk_edge_.push_back(edge);
            var_adj[c].emplace_back(static_cast<int>(r), edge);
            ++edge;
        }
        chk_off_.push_back(static_cast<int>(chk_var_.size()));
    }
    var_off_.push_back(0);
    for (std::int64_t c = 0; c < nvars_; ++c) {
        for (auto [r, e] : var_adj[c]) {
            var_chk_.push_back(r);
            var_edge_.push_back(e);
        }
        var_off_.push_back(static_cast<int>(var_chk_.size()));
    }
}

DecodeResult BinaryBpDecoder::decode(const std::vector<std::uint8_t>& syndrome, double prior,
                                     int max_iters, double clip) const {
    if (static_cast<std::int64_t>(syndrome.size()) != nchecks_)
        throw param_error("syndrome length does not match the check count");
    if (!(prior > 0.0 && prior <= 0.5)) throw param_error("prior must be in (0, 0.5]");
    if (max_iters < 1) throw param_error("max_iters must be >= 1");

    const int nedges = static_cast<int>(chk_var_.size());
    const double llr0 = std::log((1.0 - prior) / prior);
    std::vector<double> var_to_chk(nedges, llr0);
    std::vector<double> chk_to_var(nedges, 0.0);
    std::vector<double> total(nvars_, llr0);

    DecodeResult res;
    res.estimate.assign(nvars_, 0);

    auto satisfied = [&]() {
        for (std::int64_t r = 0; r < nchecks_; ++r) {
            std::uint8_t s = 0;
            for (int k = chk_off_[r]; k < chk_off_[r + 1]; ++k) s ^= res.estimate[chk_var_[k]];
            if (s != syndrome[r]) return false;
        }
        return true;
    };

    // all-zero estimate before the first iteration
    if (satisfied()) {
        res.converged = true;
        res.iterations = 0;
        return res;
    }

    std::vector<double> t(64), pre(64), suf(64);
    for (int iter = 1; iter <= max_iters; ++iter) {
        for (std::int64_t r = 0; r < nchecks_; ++r) {
            int lo = chk_off_[r], hi = chk_off_[r + 1];
            int deg = hi - lo;
            if (deg > static_cast<int>(t.size())) {
                t.resize(deg);
                pre.resize(deg + 1);
                suf.resize(deg + 1);
            }
            for (int k = 0; k < deg; ++k) t[k] = std::tanh(0.5 * var_to_chk[chk_edge_[lo + k]]);
            pre[0] = 1.0;
            for (int k = 0; k < deg; ++k) pre[k + 1] = pre[k] * t[k];
            suf[deg] = 1.0;
            for (int k = deg - 1; k >= 0; --k) suf[k] = suf[k + 1] * t[k];
            double sign = syndrome[r] ? -1.0 : 1.0;
            for (int k = 0; k < deg; ++k) {
                double prod = std::clamp(sign * pre[k] * suf[k + 1], -1.0 + 1e-15, 1.0 - 1e-15);
                chk_to_var[chk_edge_[lo + k]] = std::clamp(2.0 * std::atanh(prod), -clip, clip);
            }
        }
        for (std::int64_t v = 0; v < nvars_; ++v) {
            double sum = llr0;
            for (int k = var_off_[v]; k < var_off_[v + 1]; ++k) sum += chk_to_var[var_edge_[k]];
            total[v] = sum;
            for (int k = var_off_[v]; k < var_off_[v + 1]; ++k) {
                int e = var_edge_[k];
                var_to_chk[e] = std::clamp(sum - chk_to_var[e], -clip, clip);
            }
            res.estimate[v] = total[v] < 0.0 ? 1 : 0;
        }
        res.iterations = iter;
        if (satisfied()) {
            res.converged = true;
            return res;
        }
    }
    res.converged = false;
    return res;
}

QaryBpDecoder::QaryBpDecoder(const GfMatrix& h, const GfField& field)
    : q_(static_cast<int>(field.order())), nchecks_(h.nrows), nvars_(h.ncols) {
    if (field.degree() != h.e) throw param_error("field degree does not match the matrix");
    if (field.degree() > 4)
        throw param_error("q-ary decoding is limited to extension degrees e <= 4");
    mul_.assign(q_ * q_, 0);
    inv_.assign(q_, 0);
    for (int a = 0; a < q_; ++a) {
        for (int b = 0; b < q_; ++b) mul_[a * q_ + b] = static_cast<std::uint16_t>(field.mul(a, b));
        if (a > 0) inv_[a] = static_cast<std::uint16_t>(field.inv(a));
    }
    std::vector<std::vector<std::pair<std::int64_t, std::uint16_t>>> rows(nchecks_);
    for (const auto& [r, c, v] : h.entries) rows[r].emplace_back(c, v);
    int edge = 0;
    chk_off_.push_back(0);
    std::vector<std::vector<std::pair<int, int>>> var_adj(nvars_);
    for (std::int64_t r = 0; r < nchecks_; ++r) {
        for (auto [c, coef] : rows[r]) {
            chk_var_.push_back(static_cast<int>(c));
            chk_coef_.push_back(coef);
            chk_edge_.push_back(edge);
            var_adj[c].emplace_back(static_cast<int>(r), edge);
            ++edge;
        }
        chk_off_.push_back(static_cast<int>(chk_var_.size()));
    }
    var_off_.push_back(0);
    for (std::int64_t c = 0; c < nvars_; ++c) {
        for (auto [r, e] : var_adj[c]) {
            var_chk_.push_back(r);
            var_edge_.push_back(e);
        }
        var_off_.push_back(static_cast<int>(var_chk_.size()));
    }
}

namespace {

// in-place Walsh-Hadamard transform over the XOR group of size q = 2^e
void wht(double* a, int q) {
    for (int len = 1; len < q; len <<= 1) {
        for (int i = 0; i < q; i += len << 1) {
            for (int j = i; j < i + len; ++j) {
                double u = a[j], v = a[j + len];
                a[j] = u + v;
                a[j + len] = u - v;
            }
        }
    }
}

void normalize(double* a, int q) {
    double sum = 0.0;
    for (int i = 0; i < q; ++i) {
        if (a[i] < 0.0) a[i] = 0.0;  // tiny negative transform round-off
        sum += a[i];
    }
    if (sum < 1e-300) {
        for (int i = 0; i < q; ++i) a[i] = 1.0 / q;
    } else {
        for (int i = 0; i < q; ++i) a[i] /= sum;
    }
}

}  // namespace

DecodeResult QaryBpDecoder::decode(const std::vector<std::uint16_t>& syndrome,
                                   const std::vector<double>& symbol_prior,
                                   int max_iters) const {
    if (static_cast<std::int64_t>(syndrome.size()) != nchecks_)
        throw param_error("syndrome length does not match the check count");
    if (static_cast<int>(symbol_prior.size()) != q_)
        throw param_error("symbol prior must list q probabilities");
    if (max_iters < 1) throw param_error("max_iters must be >= 1");

    const int q = q_;
    const int nedges = static_cast<int>(chk_var_.size());
    std::vector<double> v2c(static_cast<std::size_t>(nedges) * q);
    std::vector<double> c2v(static_cast<std::size_t>(nedges) * q, 1.0 / q);
    for (int e = 0; e < nedges; ++e)
        std::copy(symbol_prior.begin(), symbol_prior.end(), v2c.begin() + e * q);

    DecodeResult res;
    res.estimate.assign(nvars_, 0);

    auto satisfied = [&]() {
        for (std::int64_t r = 0; r < nchecks_; ++r) {
            std::uint16_t s = 0;
            for (int k = chk_off_[r]; k < chk_off_[r + 1]; ++k)
                s ^= mul_[chk_coef_[k] * q + res.estimate[chk_var_[k]]];
            if (s != syndrome[r]) return false;
        }
        return true;
    };

    if (satisfied()) {
        res.converged = true;
        res.iterations = 0;
        last_msgs_ = c2v;
        return res;
    }

    std::vector<double> work, pre, suf, out(q);
    for (int iter = 1; iter <= max_iters; ++iter) {
        for (std::int64_t r = 0; r < nchecks_; ++r) {
            int lo = chk_off_[r], hi = chk_off_[r + 1];
            int deg = hi - lo;
            work.assign(static_cast<std::size_t>(deg) * q, 0.0);
            // permute by the edge coefficient, then transform
            for (int k = 0; k < deg; ++k) {
                const double* msg = &v2c[static_cast<std::size_t>(chk_edge_[lo + k]) * q];
                std::uint16_t hinv = inv_[chk_coef_[lo + k]];
                for (int y = 0; y < q; ++y) work[k * q + y] = msg[mul_[hinv * q + y]];
                wht(&work[k * q], q);
            }
            pre.assign(static_cast<std::size_t>(deg + 1) * q, 1.0);
            suf.assign(static_cast<std::size_t>(deg + 1) * q, 1.0);
            for (int k = 0; k < deg; ++k)
                for (int y = 0; y < q; ++y) pre[(k + 1) * q + y] = pre[k * q + y] * work[k * q + y];
            for (int k = deg - 1; k >= 0; --k)
                for (int y = 0; y < q; ++y) suf[k * q + y] = suf[(k + 1) * q + y] * work[k * q + y];
            for (int k = 0; k < deg; ++k) {
                for (int y = 0; y < q; ++y) out[y] = pre[k * q + y] * suf[(k + 1) * q + y];
                wht(out.data(), q);  // inverse up to the 1/q factor, absorbed by normalization
                double* dst = &c2v[static_cast<std::size_t>(chk_edge_[lo + k]) * q];
                std::uint16_t coef = chk_coef_[lo + k];
                for (int a = 0; a < q; ++a) dst[a] = out[syndrome[r] ^ mul_[coef * q + a]];
                normalize(dst, q);
            }
        }
        for (std::int64_t v = 0; v < nvars_; ++v) {
            int lo = var_off_[v], hi = var_off_[v + 1];
            int deg = hi - lo;
            pre.assign(static_cast<std::size_t>(deg + 1) * q, 1.0);
            suf.assign(static_cast<std::size_t>(deg + 1) * q, 1.0);
            for (int k = 0; k < deg; ++k) {
                const double* msg = &c2v[static_cast<std::size_t>(var_edge_[lo + k]) * q];
                for (int a = 0; a < q; ++a) pre[(k + 1) * q + a] = pre[k * q + a] * msg[a];
            }
            for (int k = deg - 1; k >= 0; --k) {
                const double* msg = &c2v[static_cast<std::size_t>(var_edge_[lo + k]) * q];
                for (int a = 0; a < q; ++a) suf[k * q + a] = suf[(k + 1) * q + a] * msg[a];
            }
            double best = -1.0;
            int best_a = 0;
            for (int a = 0; a < q; ++a) {
                double belief = symbol_prior[a] * pre[deg * q + a];
                if (belief > best) {
                    best = belief;
                    best_a = a;
                }
            }
            res.estimate[v] = static_cast<std::uint16_t>(best_a);
            for (int k = 0; k < deg; ++k) {
                double* dst = &v2c[static_cast<std::size_t>(var_edge_[lo + k]) * q];
                for (int a = 0; a < q; ++a)
                    dst[a] = symbol_prior[a] * pre[k * q + a] * suf[(k + 1) * q + a];
                normalize(dst, q);
            }
        }
        res.iterations = iter;
        if (satisfied()) {
            res.converged = true;
            break;
        }
    }
    last_msgs_ = c2v;
    return res;
}

double wilson_halfwidth(std::int64_t failures, std::int64_t trials) {
    if (trials <= 0) return 0.0;
    const double z = 1.959963984540054;
    double n = static_cast<double>(trials);
    double phat = static_cast<double>(failures) / n;
    return z / (1.0 + z * z / n) * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n));
}

namespace {

struct TrialWorkspace {
    const SparseBinaryMatrix* hx;
    const SparseBinaryMatrix* hz;
    const BinaryBpDecoder* dec_x_side;  // decodes z-components from s_x
    const BinaryBpDecoder* dec_z_side;  // decodes x-components from s_z
};

bool run_trial(const FerParams& params, const TrialWorkspace& ws, double p, std::uint64_t point,
               std::int64_t trial) {
    DetRng rng = trial_rng(params.seed, point, static_cast<std::uint64_t>(trial));
    std::int64_t n = ws.hx->ncols;
    PauliError err = sample_error(n, p, rng);
    Syndromes syn = syndrome(*ws.hx, *ws.hz, err);
    double prior = std::clamp(2.0 * p / 3.0, 1e-9, 0.5);

    DecodeResult dz = ws.dec_x_side->decode(syn.s_x, prior, params.max_iters, params.clip);
    DecodeResult dx = ws.dec_z_side->decode(syn.s_z, prior, params.max_iters, params.clip);
    if (params.syndrome_success) return !(dz.converged && dx.converged);
    for (std::int64_t i = 0; i < n; ++i)
        if (dx.estimate[i] != err.x[i] || dz.estimate[i] != err.z[i]) return true;
    return false;
}

bool run_trial_qary(const FerParams& params, const GfMatrix& gx, const GfMatrix& gz,
                    const GfField& field, const QaryBpDecoder& dec_x_side,
                    const QaryBpDecoder& dec_z_side, double p, std::uint64_t point,
                    std::int64_t trial) {
    DetRng rng = trial_rng(params.seed, point, static_cast<std::uint64_t>(trial));
    std::int64_t n = gx.ncols;
    PauliError err = sample_error(n, p, rng);
    double prior = std::clamp(2.0 * p / 3.0, 1e-9, 0.5);
    int q = static_cast<int>(field.order());
    std::vector<double> sp(q, 0.0);
    sp[0] = 1.0 - prior;
    for (int a = 1; a < q; ++a) sp[a] = prior / (q - 1);

    auto gf_syndrome = [&](const GfMatrix& m, const std::vector<std::uint8_t>& bits) {
        std::vector<std::uint16_t> s(m.nrows, 0);
        for (const auto& [r, c, v] : m.entries)
            if (bits[c]) s[r] ^= v;
        return s;
    };
    std::vector<std::uint16_t> qsx = gf_syndrome(gx, err.z);
    std::vector<std::uint16_t> qsz = gf_syndrome(gz, err.x);

    DecodeResult dz = dec_x_side.decode(qsx, sp, params.max_iters);
    DecodeResult dx = dec_z_side.decode(qsz, sp, params.max_iters);
    bool converged = dz.converged && dx.converged;
    bool exact = true;
    for (std::int64_t i = 0; i < n && exact; ++i)
        exact = dx.estimate[i] == err.x[i] && dz.estimate[i] == err.z[i];
    if (params.syndrome_success) return !converged;
    return !exact;
}

}  // namespace

std::vector<FerRecord> fer_experiment(const FerParams& params) {
    auto [bx, bz] = params.n_c > 1 ? build_sc_pair(params.L, params.P, params.base, params.n_c)
                                   : build_orthogonal_pair(params.L, params.P, params.base);
    return fer_experiment(bx, bz, params);
}

std::vector<FerRecord> fer_experiment(const QcBlockMatrix& bx, const QcBlockMatrix& bz,
                                      const FerParams& params) {
    if (params.trials < 1) throw param_error("trials must be >= 1");
    SparseBinaryMatrix hx = expand(bx);
    SparseBinaryMatrix hz = expand(bz);
    auto orth = check_orthogonal_serial(hx, hz);
    if (!orth.ok)
        throw std::runtime_error("pair is not orthogonal; refusing to simulate");

    std::vector<double> grid = params.p_grid;
    std::sort(grid.begin(), grid.end());

    std::string mode = params.qary ? "qary" : "binary";
    if (params.syndrome_success) mode += "-syndmatch";

#ifdef _OPENMP
    const int nthreads = params.jobs > 0 ? params.jobs : omp_get_max_threads();
#endif

    std::vector<FerRecord> records;
    if (!params.qary) {
        BinaryBpDecoder dec_x(hx), dec_z(hz);
        TrialWorkspace ws{&hx, &hz, &dec_x, &dec_z};
        for (std::size_t pi = 0; pi < grid.size(); ++pi) {
            auto t0 = std::chrono::steady_clock::now();
            std::int64_t failures = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : failures) num_threads(nthreads)
            for (std::int64_t t = 0; t < params.trials; ++t)
                failures += run_trial(params, ws, grid[pi], pi, t) ? 1 : 0;
            auto t1 = std::chrono::steady_clock::now();
            FerRecord rec;
            rec.L = params.L;
            rec.P = params.P;
            rec.e = 1;
            rec.n_c = params.n_c;
            rec.p = grid[pi];
            rec.trials = params.trials;
            rec.failures = failures;
            rec.fer = static_cast<double>(failures) / static_cast<double>(params.trials);
            rec.ci95 = wilson_halfwidth(failures, params.trials);
            rec.seed = params.seed;
            rec.mode = mode;
            rec.wall_time = std::chrono::duration<double>(t1 - t0).count();
            records.push_back(std::move(rec));
        }
    } else {
        if (params.n_c > 1)
            throw param_error("q-ary simulation supports uncoupled pairs only");
        GfField field(FieldSpec::standard(params.e));
        auto [gx, gz] = extend_to_nb(bx, bz, field.spec(), params.seed);
        QaryBpDecoder dec_x(gx, field), dec_z(gz, field);
        for (std::size_t pi = 0; pi < grid.size(); ++pi) {
            auto t0 = std::chrono::steady_clock::now();
            std::int64_t failures = 0;
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : failures) num_threads(nthreads)
            for (std::int64_t t = 0; t < params.trials; ++t)
                failures += run_trial_qary(params, gx, gz, field, dec_x, dec_z, grid[pi], pi, t)
                                ? 1
                                : 0;
            auto t1 = std::chrono::steady_clock::now();
            FerRecord rec;
            rec.L = params.L;
            rec.P = params.P;
            rec.e = params.e;
            rec.n_c = params.n_c;
            rec.p = grid[pi];
            rec.trials = params.trials;
            rec.failures = failures;
            rec.fer = static_cast<double>(failures) / static_cast<double>(params.trials);
            rec.ci95 = wilson_halfwidth(failures, params.trials);
            rec.seed = params.seed;
            rec.mode = mode;
            rec.wall_time = std::chrono::duration<double>(t1 - t0).count();
            records.push_back(std::move(rec));
        }
    }
    return records;
}

std::string fer_csv_header() { return "L,P,e,nc,p,trials,failures,fer,ci95,seed,mode\n"; }

std::string fer_csv(const std::vector<FerRecord>& records) {
    std::ostringstream os;
    os << fer_csv_header();
    char buf[64];
    for (const auto& r : records) {
        os << r.L << ',' << r.P << ',' << r.e << ',' << r.n_c << ',';
        std::snprintf(buf, sizeof buf, "%.10g", r.p);
        os << buf << ',' << r.trials << ',' << r.failures << ',';
        std::snprintf(buf, sizeof buf, "%.10g", r.fer);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.10g", r.ci95);
        os << buf << ',' << r.seed << ',' << r.mode << '\n';
    }
    return os.str();
}

}  // namespace qclf
