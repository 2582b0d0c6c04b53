#include "core/regions.hpp"

#include <cmath>

namespace ssops {

namespace {

constexpr double kEqTol = 1e-12;

region_constraint equality(std::string name, double lhs, double rhs) {
    region_constraint c;
    c.name = std::move(name);
    c.lo = lhs;
    c.mid = rhs;
    c.hi = lhs;
    c.strict = false;
    c.satisfied = std::abs(lhs - rhs) <= kEqTol;
    return c;
}

region_constraint interval(std::string name, double lo, double mid, double hi, bool strict) {
    region_constraint c;
    c.name = std::move(name);
    c.lo = lo;
    c.mid = mid;
    c.hi = hi;
    c.strict = strict;
    if (strict) {
        c.satisfied = lo < mid && mid < hi;
        c.boundary = !c.satisfied &&
                     (std::abs(mid - lo) <= kEqTol || std::abs(mid - hi) <= kEqTol) &&
                     mid >= lo - kEqTol && mid <= hi + kEqTol;
    } else {
        c.satisfied = lo <= mid && mid <= hi;
    }
    return c;
}

region_verdict finish(std::vector<region_constraint> cs) {
    region_verdict v;
    v.binding = std::move(cs);
    v.admissible = true;
    for (const auto& c : v.binding) {
        v.admissible = v.admissible && c.satisfied;
        v.boundary = v.boundary || c.boundary;
    }
    return v;
}

double alpha_cut(int n) { return (n - 1.0) / (n + 1.0) * n; }

}  // namespace

void region_query::validate() const {
    if (n < 2) throw domain_error("region_query: n must be >= 2");
    if (s < 0.0) throw domain_error("region_query: s must be >= 0");
    if (!(p > 1.0) || std::isinf(p)) {
        throw domain_error("region_query: requires 1 < p < inf");
    }
    if (has_q() && (!(q > 1.0) || std::isinf(q))) {
        throw domain_error("region_query: requires 1 < q < inf");
    }
}

region_verdict theorem_one(const region_query& q) {
    q.validate();
    if (!(q.alpha > 0.0 && q.alpha < q.n)) {
        throw domain_error("theorem_one: hypothesis 0 < alpha < n violated");
    }
    if (!(q.s > 0.0)) {
        throw domain_error("theorem_one: hypothesis s > 0 violated");
    }
    const double tau = q.alpha / q.n;
    const double d = 2.0 * q.n - 2.0 + 4.0 * q.s;
    const double lower = (q.n - 1.0) / d + (4.0 * q.s + q.n - 1.0) / d * tau;
    const double upper = (q.n - 1.0 + 4.0 * q.s) / d + (q.n - 1.0) / d * tau;
    std::vector<region_constraint> cs;
    cs.push_back(equality("alpha/n = 1/p - 1/q", tau, 1.0 / q.p - 1.0 / q.q_eff()));
    cs.push_back(interval("1/p between the theorem-one bounds", lower, 1.0 / q.p, upper,
                          /*strict=*/true));
    return finish(std::move(cs));
}

region_verdict theorem_two(const region_query& q) {
    q.validate();
    if (q.alpha >= alpha_cut(q.n) && q.alpha < q.n) {
        throw domain_error(
            "theorem_two: alpha >= ((n-1)/(n+1)) n is covered by remark_one");
    }
    if (!(q.alpha > 0.0 && q.alpha < alpha_cut(q.n))) {
        throw domain_error("theorem_two: hypothesis 0 < alpha < ((n-1)/(n+1)) n violated");
    }
    if (!(q.s > 0.0)) {
        throw domain_error("theorem_two: hypothesis s > 0 violated");
    }
    if (q.has_q() && q.q != q.p) {
        throw domain_error("theorem_two: an L^p -> L^p statement, requires p = q");
    }
    const double tau = q.alpha / q.n;
    const double d = 2.0 * q.n - 2.0 + 4.0 * q.s;
    const double lower = (q.n - 1.0) / d - (q.n + 1.0) / d * tau;
    const double upper = (q.n - 1.0 + 4.0 * q.s) / d + (q.n + 1.0) / d * tau;
    std::vector<region_constraint> cs;
    cs.push_back(interval("1/p between the theorem-two bounds", lower, 1.0 / q.p, upper,
                          /*strict=*/true));
    return finish(std::move(cs));
}

region_verdict remark_one(const region_query& q) {
    q.validate();
    if (q.has_q() && q.q != q.p) {
        throw domain_error("remark_one: an L^p -> L^p statement, requires p = q");
    }
    std::vector<region_constraint> cs;
    region_constraint lo =
        interval("((n-1)/(n+1)) n <= alpha", alpha_cut(q.n), q.alpha,
                 std::numeric_limits<double>::infinity(), /*strict=*/false);
    lo.hi = q.n;  // report the full range; upper end handled by the next constraint
    cs.push_back(lo);
    cs.push_back(interval("alpha < n", -std::numeric_limits<double>::infinity(), q.alpha,
                          static_cast<double>(q.n), /*strict=*/true));
    // 1 < p < inf holds for every validated query; recorded for the verdict
    cs.push_back(interval("1 < p < inf", 1.0, q.p,
                          std::numeric_limits<double>::infinity(), /*strict=*/true));
    return finish(std::move(cs));
}

region_verdict lemma_one(const region_query& q) {
    q.validate();
    if (!(q.alpha > 0.0 && q.alpha < q.n)) {
        throw domain_error("lemma_one: hypothesis 0 < alpha < n violated");
    }
    if (q.q_eff() < q.p) {
        throw domain_error("lemma_one: requires 1 < p <= q < inf");
    }
    std::vector<region_constraint> cs;
    cs.push_back(interval("alpha/n >= 1/p - 1/q", 1.0 / q.p - 1.0 / q.q_eff(),
                          q.alpha / q.n, std::numeric_limits<double>::infinity(),
                          /*strict=*/false));
    return finish(std::move(cs));
}

region_verdict lemma_two(const region_query& q) {
    q.validate();
    if (!(q.alpha > 0.0 && q.alpha < q.n)) {
        throw domain_error("lemma_two: hypothesis 0 < alpha < n violated");
    }
    const double tau = q.alpha / q.n;
    const double invp = 1.0 / q.p;
    const double gap = invp - 1.0 / q.q_eff();
    std::vector<region_constraint> cs;
    if (q.s <= 0.5) {
        cs.push_back(equality("(1-s) alpha/n = 1/p - 1/q", (1.0 - q.s) * tau, gap));
        cs.push_back(interval("1/2 + (alpha/n)(1/2 - s) <= 1/p <= 1/2 + alpha/(2n)",
                              0.5 + tau * (0.5 - q.s), invp, 0.5 + tau / 2.0,
                              /*strict=*/false));
    } else {
        cs.push_back(equality("alpha/(2n) = 1/p - 1/q", tau / 2.0, gap));
        cs.push_back(interval("1/2 <= 1/p <= 1/2 + alpha/(2n)", 0.5, invp,
                              0.5 + tau / 2.0, /*strict=*/false));
    }
    return finish(std::move(cs));
}

region_verdict region_check(region_predicate which, const region_query& q) {
    switch (which) {
        case region_predicate::theorem_one: return theorem_one(q);
        case region_predicate::theorem_two: return theorem_two(q);
        case region_predicate::remark_one: return remark_one(q);
        case region_predicate::lemma_one: return lemma_one(q);
        case region_predicate::lemma_two: return lemma_two(q);
    }
    throw domain_error("region_check: unknown predicate");
}

std::vector<polygon_row> region_polygon(int n, double s, int alpha_steps) {
    if (n < 2) throw domain_error("region_polygon: n must be >= 2");
    if (!(s > 0.0)) throw domain_error("region_polygon: requires s > 0");
    if (alpha_steps < 2) throw domain_error("region_polygon: alpha_steps must be >= 2");
    const double d = 2.0 * n - 2.0 + 4.0 * s;
    std::vector<polygon_row> rows;
    rows.reserve(alpha_steps + 1);
    for (int i = 0; i <= alpha_steps; ++i) {
        const double tau = static_cast<double>(i) / alpha_steps;
        rows.push_back({tau, (n - 1.0) / d + (4.0 * s + n - 1.0) / d * tau,
                        (n - 1.0 + 4.0 * s) / d + (n - 1.0) / d * tau});
    }
    return rows;
}

}  // namespace ssops
