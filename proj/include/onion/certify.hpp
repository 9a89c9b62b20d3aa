#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "onion/core.hpp"
#include "onion/hull.hpp"
#include "onion/peel.hpp"

namespace onion {

/// Strictly decreasing squared layer radii; its length bounds the layer count by d*n^2 + 1.
struct NormDescentCertificate {
    Grid grid;
    std::vector<Scalar> radii_sq;
};

/// A precedence chain from the origin to (n,...,n) with strictly decreasing layers;
/// its length d*n + 1 bounds the layer count from below.
struct ChainCertificate {
    Grid grid;
    std::vector<Point> chain;
    std::vector<std::uint32_t> layer_indices;
};

/// d*n^2 + 1.
Scalar upper_bound(std::size_t d, std::uint64_t n);
/// d*n + 1.
Scalar lower_bound(std::size_t d, std::uint64_t n);

/// x and y agree except in one coordinate k, where |x_k| < |y_k|.
bool prec(const Point& x, const Point& y);

/// x as a convex combination of y and y reflected in the differing coordinate.
/// Throws DomainError unless prec(x, y). Throws InternalInconsistency if the two
/// support points are not on the same layer of `a`.
ConvexCombinationWitness convex_witness_for_prec(const Point& x, const Point& y, const LayerAssignment& a);

/// Staircase chain (raise coordinate 1 to n, then coordinate 2, ...) with layers read
/// from `a`. Throws InternalInconsistency if the layers do not strictly decrease.
ChainCertificate build_chain_certificate(const Grid& g, const LayerAssignment& a);

/// Throws InternalInconsistency if any of the radius invariants fails.
NormDescentCertificate build_norm_certificate(const Grid& g, const LayerAssignment& a);

struct Verdict {
    bool ok = true;
    std::string reason;

    explicit operator bool() const noexcept { return ok; }
    static Verdict pass() { return {}; }
    static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

// Verification uses integer arithmetic and prec only; it never peels.
Verdict verify(const NormDescentCertificate& c);
Verdict verify(const ChainCertificate& c);

/// Cross-checks a certificate against an independently produced assignment.
Verdict verify_against(const NormDescentCertificate& c, const LayerAssignment& a);
Verdict verify_against(const ChainCertificate& c, const LayerAssignment& a);

// Text format:
//   kind: norm-descent | chain
//   d: <int>
//   n: <int>
//   entries: <count>
//   then one row per entry: "<radius_sq> <layer>" or "<x1> ... <xd> <layer>".
std::string to_text(const NormDescentCertificate& c);
std::string to_text(const ChainCertificate& c);

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

NormDescentCertificate parse_norm_certificate(const std::string& text);
ChainCertificate parse_chain_certificate(const std::string& text);

}  // namespace onion
