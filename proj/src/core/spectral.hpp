#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <tuple>
#include <vector>

#include "certificate.hpp"
#include "config.hpp"
#include "ringnet.hpp"

namespace midsub {

// Canonical (i, j, l) key of a ringnet vertex; rotation acts on l.
using SegKey = std::tuple<int, int, int>;

// Core mesh N_c of a ringnet with respect to a word, rings N_{c.k} around it,
// and the convex-corner split of ring 1 (N_a corners, N_b rest).
struct CoreLabeling {
    std::vector<SegKey> core;
    std::vector<std::vector<SegKey>> rings;  // rings[k] = N_{c.k+1}
    std::vector<SegKey> corners;             // N_a
    std::vector<SegKey> ring1_rest;          // N_b
    int influence_rounds = 0;                // k at which the core stabilized
    int core_max_center_ring = 0;
};

// Influence propagation: all vertices whose value affects the center element
// of U^k N for some k >= 1, iterated until two consecutive sets agree.
CoreLabeling compute_core(const OperatorWord& even_word, int m, const Config& cfg);

// Ring-1 vertices incident to exactly one face of the band N_{c.0..1}.
// (Computed inside compute_core; exposed for tests.)
std::vector<SegKey> classify_corners(const Ringnet& net, const std::vector<SegKey>& core,
                                     const std::vector<SegKey>& ring1);

// The subdivision matrix S on the c.rho-net, exact rationals, ordered
// [N_c, N_b, N_a, N_{c.2}, ..., N_{c.rho}].
struct SubdivisionMatrix {
    std::string word_text;
    int m = 0;
    Orientation orientation = Orientation::Primal;
    int rho = 0;
    double sigma = 0.0;  // of the applied (even-v) word

    std::vector<SegKey> keys;            // matrix index -> key
    std::map<SegKey, int> key_index;
    std::vector<SparseRow> rows;         // exact; indices are matrix indices
    std::vector<int> rot;                // index -> index of (i, j, l+1)

    int core_size = 0, b_size = 0, a_size = 0;
    std::vector<int> ring_start;         // start offsets of N_{c.k}, k >= 2

    CoreLabeling labeling;

    bool stochastic_ok = false;          // rows sum to 1, entries >= 0 (exact)
    bool block_structure_ok = false;     // required zero blocks vanish
    bool rotation_ok = false;            // S commutes with the rotation

    int group_ring(int idx) const;       // 0,1 for core/ring1; k for ring k
    Eigen::MatrixXd dense() const;
    Eigen::MatrixXd block(int start, int size) const;
    std::string dump_triplets() const;   // "row col num/den" lines
};

// Assembles S for an even-v word (callers square odd-v words first).
// rho_override = 0 selects rho automatically and retries on closure failure.
SubdivisionMatrix build_subdivision_matrix(const OperatorWord& even_word, int m,
                                           const Config& cfg, int rho_override = 0);

// Discrete-Fourier block of frequency f (0..m-1). The center element of a
// primal net appears only in the f = 0 block.
Eigen::MatrixXcd frequency_block(const SubdivisionMatrix& S, int f);

struct EigenResult {
    std::complex<double> value;
    double residual = 0.0;
    long iterations = 0;
    bool converged = false;
    std::string method;  // "power" or "dense"
    Eigen::VectorXcd vector;
};

// Dominant eigenvalue of a complex matrix by power iteration with dense
// eigensolver fallback.
EigenResult dominant_eigenvalue(const Eigen::MatrixXcd& M, const Config& cfg);

struct SpectrumReport {
    std::string word_text;   // word actually analyzed (squared when v was odd)
    std::string input_word;
    int m = 0;
    int rho = 0;
    double sigma = 0.0;
    std::vector<std::complex<double>> lambda_f;  // dominant per frequency
    std::vector<std::string> method_f;
    std::vector<long> iterations_f;
    double lambda_one = 0.0;     // lambda_{2 pi / m}: f = 1 dominant (real)
    std::complex<double> mu0;    // frequency-0 subdominant
    double lambda_pi = 0.0;      // from the (m=4, f=2) auxiliary configuration
    double rho_b = 0.0, rho_a = 0.0;
    int mult_algebraic = 0;      // of lambda_one across f = 1 and m-1
    int mult_geometric = 0;
    double max_block_residual = 0.0;
    bool stochastic_ok = false, block_structure_ok = false, rotation_ok = false;

    Json to_json(const Config& cfg) const;
    std::string eigen_csv() const;  // frequency table
};

SpectrumReport spectrum_report(const OperatorWord& word, int m, const Config& cfg,
                               int rho_override = 0);

// Spectral radii of the B and A diagonal blocks.
std::pair<double, double> block_spectral_radii(const SubdivisionMatrix& S);

// C0 certificate: S stochastic, a power of S with a strictly positive column,
// eigenvalue 1 simple and dominant.
Certificate check_c0(const OperatorWord& word, int m, const Config& cfg);

// Smallest power l <= l_max such that S^l has a strictly positive column, or
// -1. Boolean reachability on the positivity pattern.
int positive_column_power(const SubdivisionMatrix& S, int l_max);

// Eigenvalues of the full matrix (dense oracle).
Eigen::VectorXcd full_spectrum(const SubdivisionMatrix& S);

} // namespace midsub
