#pragma once

#include "mxl/status.hpp"
#include "mxl/trig.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mxl {

/// Strands sampled at t_k = 2 pi k / samples, k = 0..samples, ordered by real part at t = 0, ties by decreasing imaginary part.
struct GeometricBraid {
    std::vector<std::vector<Complex>> strands;
    std::vector<int> permutation;  ///< strand j ends where strand permutation[j] starts
    bool affine = true;            ///< no sample at 0
    double min_separation = 0;     ///< smallest pairwise distance over all samples

    int strand_count() const { return static_cast<int>(strands.size()); }
    int samples() const { return strands.empty() ? 0 : static_cast<int>(strands[0].size()) - 1; }
};

/// Sorts strands, matches endpoints and fills the derived fields.
GeometricBraid make_braid(std::vector<std::vector<Complex>> strands);

/// Artin word: letter +j is sigma_j, -j its inverse.
struct BraidWord {
    int strands = 1;
    std::vector<int> letters;

    /// Final position of the strand starting at each position.
    std::vector<int> permutation() const;
    int components() const;
    BraidWord power(int n) const;
    /// Whitespace-separated signed integers; empty for the trivial word.
    std::string to_string() const;
    /// Strand count defaults to one more than the largest generator index.
    static BraidWord parse(std::string_view text, int strands = 0);

    bool operator==(const BraidWord&) const = default;
};

int cycle_count(const std::vector<int>& permutation);

/// Throws NonSemiholomorphic, LeadingCoefficientVanishes or StrandCollision.
GeometricBraid track_roots(const LoopPoly& g, int samples = 1024);

/// Reads crossings of the real-part projection; throws NonGenericProjection.
BraidWord extract_word(const GeometricBraid& b);

struct FibrationCertificate {
    int m = 0;
    double min_arg_derivative = 0;
    int samples = 0;
    Status status = Status::Inconclusive;
    double fd_error = 0;
    std::optional<double> witness_t;  ///< where the argument derivative or critical value vanishes
    std::optional<Complex> witness_point;
    std::string note;

    bool verified() const { return status == Status::Verified; }
};

/// P-fibered with O-multiplicity m: d/dt arg of every critical value of u^m g keeps away from 0.
FibrationCertificate check_pfibered(const LoopPoly& g, int m, int samples = 1024);

struct WordBraid {
    GeometricBraid braid;
    LoopPoly loop;  ///< monic in u, exact dyadic trig coefficients
    int harmonics = 0;
};

/// Half-turn representative of a word, Fourier-fitted; harmonics <= 0 selects them automatically.
/// Throws FidelityLoss when the fitted loop no longer reproduces the word.
WordBraid braid_from_word(const BraidWord& w, int harmonics = 0, bool affine_offset = false, int samples = 1024);

}  // namespace mxl
