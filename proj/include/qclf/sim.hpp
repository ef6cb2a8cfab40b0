#ifndef QCLF_SIM_HPP
#define QCLF_SIM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qclf/gf.hpp"
#include "qclf/qc_matrix.hpp"

namespace qclf {

/// Deterministic generator used for all randomized paths: a splitmix64
/// stream, so results never depend on standard-library distribution details.
struct DetRng {
    std::uint64_t state;
    explicit DetRng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    double uniform();  // [0, 1)
};

/// Derive an independent per-trial stream from (master seed, point, trial).
DetRng trial_rng(std::uint64_t master_seed, std::uint64_t point, std::uint64_t trial);

/// X/Z components of an n-qubit Pauli error (Y sets both bits).
struct PauliError {
    std::vector<std::uint8_t> x;
    std::vector<std::uint8_t> z;

    bool operator==(const PauliError&) const = default;
};

/// Depolarizing channel: each qubit gets I with 1-p and X, Y, Z each with p/3.
PauliError sample_error(std::int64_t n, double p, DetRng& rng);

std::vector<std::uint8_t> gf2_mat_vec(const SparseBinaryMatrix& h,
                                      const std::vector<std::uint8_t>& v);

/// CSS syndromes: s_x = H_X * z, s_z = H_Z * x over GF(2).
struct Syndromes {
    std::vector<std::uint8_t> s_x;
    std::vector<std::uint8_t> s_z;
};
Syndromes syndrome(const SparseBinaryMatrix& hx, const SparseBinaryMatrix& hz,
                   const PauliError& err);

struct DecodeResult {
    std::vector<std::uint16_t> estimate;  // 0/1 in binary mode, field elements otherwise
    bool converged = false;
    int iterations = 0;
};

/// Syndrome sum-product over the binary Tanner graph, flooding schedule,
/// LLR messages clipped to +/- clip.
class BinaryBpDecoder {
  public:
    explicit BinaryBpDecoder(const SparseBinaryMatrix& h);

    DecodeResult decode(const std::vector<std::uint8_t>& syndrome, double prior,
                        int max_iters = 50, double clip = 30.0) const;

    std::int64_t nchecks() const { return nchecks_; }
    std::int64_t nvars() const { return nvars_; }

  private:
    std::int64_t nchecks_ = 0;
    std::int64_t nvars_ = 0;
    // CSR over edges, check-major and variable-major views of the same edge ids
    std::vector<int> chk_off_, chk_var_, chk_edge_;
    std::vector<int> var_off_, var_chk_, var_edge_;
};

/// q-ary syndrome sum-product for GF(2^e) matrices, e <= 4. Check updates
/// run permuted XOR-convolutions via the Walsh-Hadamard transform.
class QaryBpDecoder {
  public:
    QaryBpDecoder(const GfMatrix& h, const GfField& field);

    DecodeResult decode(const std::vector<std::uint16_t>& syndrome,
                        const std::vector<double>& symbol_prior, int max_iters = 50) const;

    // messages from the last decode() call, for invariant checks
    const std::vector<double>& last_messages() const { return last_msgs_; }
    int q() const { return q_; }

  private:
    int q_ = 2;
    std::int64_t nchecks_ = 0;
    std::int64_t nvars_ = 0;
    std::vector<int> chk_off_, chk_var_, chk_edge_;
    std::vector<std::uint16_t> chk_coef_;
    std::vector<int> var_off_, var_chk_, var_edge_;
    std::vector<std::uint16_t> mul_;  // q x q multiplication table
    std::vector<std::uint16_t> inv_;
    mutable std::vector<double> last_msgs_;
};

/// One Monte-Carlo measurement point.
struct FerRecord {
    int L = 0;
    std::int64_t P = 0;
    int e = 1;
    int n_c = 1;
    double p = 0.0;
    std::int64_t trials = 0;
    std::int64_t failures = 0;
    double fer = 0.0;
    double ci95 = 0.0;  // Wilson interval half-width
    std::uint64_t seed = 0;
    std::string mode;
    double wall_time = 0.0;  // seconds; not part of the CSV
};

struct FerParams {
    int L = 8;
    std::int64_t P = 138;
    int base = 2;
    int n_c = 1;
    int e = 1;  // label field degree; > 1 only meaningful with qary mode
    std::vector<double> p_grid;
    std::int64_t trials = 1000;
    std::uint64_t seed = 1;
    bool qary = false;               // default is binary component decoding
    bool syndrome_success = false;   // count syndrome-matching estimates as success
    int max_iters = 50;
    double clip = 30.0;
    int jobs = 0;
};

double wilson_halfwidth(std::int64_t failures, std::int64_t trials);

/// Depolarizing-channel Monte Carlo: per point, sample errors, decode both
/// components, count a failure unless the estimated pattern matches exactly.
/// Deterministic in (params, seed), independent of the worker count.
std::vector<FerRecord> fer_experiment(const FerParams& params);

/// Same, over an explicitly supplied pair (e.g. loaded from files).
std::vector<FerRecord> fer_experiment(const QcBlockMatrix& bx, const QcBlockMatrix& bz,
                                      const FerParams& params);

std::string fer_csv_header();
std::string fer_csv(const std::vector<FerRecord>& records);

}  // namespace qclf

#endif
