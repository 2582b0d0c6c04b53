#pragma once

#include <string>
#include <vector>

#include "core/common.hpp"

namespace ssops {

enum class region_predicate { theorem_one, theorem_two, remark_one, lemma_one, lemma_two };

// Exponent tuple for the admissibility predicates. q < 0 means "not given"
// and is treated as q = p for the L^p -> L^p statements.
struct region_query {
    int n = 2;
    double s = 0.0;
    double alpha = 0.0;
    double p = 2.0;
    double q = -1.0;

    bool has_q() const { return q > 0.0; }
    double q_eff() const { return has_q() ? q : p; }
    void validate() const;
};

struct region_constraint {
    std::string name;
    double lo, mid, hi;  // evaluated as lo (<|<=) mid (<|<=) hi; equalities use lo == hi
    bool strict = false;
    bool satisfied = false;
    bool boundary = false;  // a strict constraint held with equality (within tol)
};

struct region_verdict {
    bool admissible = false;
    bool boundary = false;
    std::vector<region_constraint> binding;
};

// Equality constraints use absolute tolerance 1e-12; strict inequalities are
// tested strictly and report a boundary flag when they fail only by equality.
region_verdict theorem_one(const region_query& q);
region_verdict theorem_two(const region_query& q);
region_verdict remark_one(const region_query& q);
region_verdict lemma_one(const region_query& q);
region_verdict lemma_two(const region_query& q);
region_verdict region_check(region_predicate which, const region_query& q);

struct polygon_row {
    double alpha_over_n;
    double inv_p_lower;
    double inv_p_upper;
};

// Tabulates the theorem-one 1/p bounds over alpha/n in [0, 1]
// (alpha_steps + 1 rows; both bounds are affine in alpha/n).
std::vector<polygon_row> region_polygon(int n, double s, int alpha_steps);

}  // namespace ssops
