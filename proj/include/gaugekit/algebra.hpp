#pragma once

#include "gaugekit/matrix.hpp"

#include <optional>
#include <string>

namespace gaugekit {

/// Finite group given by a dense multiplication table over indices
/// 0..order-1. Construction validates the full group axioms by brute
/// force, which is the verification strategy for everything downstream.
struct FiniteGroup {
    int order = 0;
    std::vector<std::vector<int>> cayley;  // cayley[g][h] = g*h
    int identity = 0;
    std::vector<int> inverse;

    int mul(int g, int h) const { return cayley[g][h]; }
    int inv(int g) const { return inverse[g]; }
};

FiniteGroup make_group(std::vector<std::vector<int>> cayley);
FiniteGroup cyclic_group(int n);
FiniteGroup symmetric_group(int n);  // n <= 5

/// Left action of a finite group on points 0..num_points-1.
struct FiniteAction {
    FiniteGroup group;
    int num_points = 0;
    std::vector<std::vector<int>> table;  // table[g][x] = g.x

    int act(int g, int x) const { return table[g][x]; }
};

FiniteAction make_action(FiniteGroup group, std::vector<std::vector<int>> table);
FiniteAction natural_action(const FiniteGroup &sym_group, int n);  // S_n on n points
FiniteAction trivial_action(const FiniteGroup &g, int num_points);

std::vector<std::vector<int>> orbits(const FiniteAction &a);
std::vector<int> stabilizer(const FiniteAction &a, int x);
bool conjugacy_check(const FiniteAction &a, int x, int g);

/// Witness for the equivalence between the action on an orbit and the
/// canonical action on the coset space of the stabilizer.
struct CosetEquivalence {
    bool ok = false;
    std::vector<int> stabilizer;
    std::vector<std::vector<int>> cosets;   // each sorted; cosets[0] = stabilizer
    std::vector<int> coset_of_point;        // orbit point -> coset index (-1 off orbit)
    std::string failure;
};

CosetEquivalence coset_action_equivalence(const FiniteAction &a, int x);

// --- matrix Lie group / Lie algebra kernels ---

/// Scaling-and-squaring with a fixed-degree Taylor evaluation; the
/// scaled norm is brought below 1/2 so the truncation sits under 1e-14.
Matrix mat_exp(const Matrix &L, double t = 1.0);

/// Truncated Mercator series; requires max_abs(T - I) < 0.5.
Matrix mat_log_near_identity(const Matrix &T);

Matrix adjoint(const Matrix &g, const Matrix &L);           // g L g^-1
Matrix bracket(const Matrix &L, const Matrix &K);           // LK - KL

/// a + b + [a,b]/2 + ([a,[a,b]] + [b,[b,a]])/12
Matrix bch3(const Matrix &a, const Matrix &b);

using Representation = std::function<Matrix(const Matrix &)>;

/// d/dt R(exp(tL)) at t=0 by a central difference (optionally one
/// Richardson step).
Matrix rep_derivative(const Representation &R, const Matrix &L, double h = 1e-5,
                      bool richardson = false);

// residuals for tagged algebra/group membership
double orthogonal_residual(const Matrix &lambda, int r, int s);  // |Lam eta Lam^t - eta|
double anti_hermitian_residual(const Matrix &L);
Matrix signature_eta(int r, int s);

} // namespace gaugekit
