#pragma once

#include "spectral/bounds.hpp"
#include "spectral/exact.hpp"
#include "spectral/space.hpp"

#include <vector>

namespace spectral {

// c2 z^2 + c1 z + c0 with exact coefficients.
struct QuadPoly {
    Rational c2;
    Rational c1;
    Rational c0;

    Rational operator()(const Rational& z) const { return (c2 * z + c1) * z + c0; }
    friend bool operator==(const QuadPoly&, const QuadPoly&) = default;
};

std::string to_string(const QuadPoly& p);

// P_N(z) = sum_{j<=N} (z - lambda_j)(z - lambda - (d+4)/d lambda_j), lambda = lambda_(1).
QuadPoly pn(const Space& space, const Integer& n);
// Q_N(z) = N (z - lambda_N)(z - lambda_{N+1})
QuadPoly qn(const Space& space, const Integer& n);

struct PqMismatch {
    long level;
    Integer n;
    QuadPoly p;
    QuadPoly q;
};

struct PqReport {
    Space space;
    long l_max;
    std::vector<Integer> gap_indices;
    std::vector<PqMismatch> mismatches;
    bool pass;
};

// Exact P_N = Q_N at every gap index N = m_0 + ... + m_L, L <= l_max.
PqReport check_pq_identity(const Space& space, long l_max);

// R_2(z) / (z + b)^{2+d/2}
double r2_shifted_ratio(const Space& space, double z, double b);

struct TraceSeries {
    long l_max;
    double partial_sum;
    double last_term;
    double tail_estimate;  // |last term| (l_max + 1)
    double limit;          // L^class_{0,d} |M|
};

// Partial sums of sum_l N_l (t_{l+1}^{-d/2} - t_l^{-d/2} + d/4 (t_{l+1}^{-1-d/2} + t_l^{-1-d/2})(lambda_(l+1) - lambda_(l)))
// with t_l = lambda_(l) + d lambda_(1)/4 and N_l = m_0 + ... + m_l.
TraceSeries trace_identity_partial(const Space& space, long l_max);

// The circle series written with sqrt(lambda) differences:
// sum_l (2l+1)/8 (sqrt(b)-sqrt(a))^3 (a+b+3 sqrt(ab)) / (t_a t_b)^{3/2}, a = l^2, b = (l+1)^2.
double circle_trace_remark_partial(long l_max);

ScanReport r2_bounds_check(const Space& space, std::vector<double> grid);
ScanReport r2_bounds_check(const Space& space);

// (d+4)/4 R_2(z) - (z + d^2/4) R_1(z) on S^d; never positive.
double r2_r1_defect(int d, double z);

// sum (z^2 - lambda_j^2)_+ - ((2d+4) z - d^2)/(d+4) R_1(z) on S^d; never negative.
double biharmonic_margin(int d, double z);

struct GapMinimum {
    long L;
    Integer n;
    Rational z0;      // L(L+d)
    Rational value;   // Q_N(z0) + d R_1(z0)
    Rational expected;  // N (d-2)/(d+2) L(L+d)
};

// Exact minimum of Q_N + d R_1 over the gap [lambda_(L), lambda_(L+1)] of S^d.
GapMinimum gap_minimum(int d, long L);

}  // namespace spectral
