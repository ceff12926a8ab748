#include "evospread/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "evospread/errors.hpp"

namespace evospread {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_beta(double beta) {
    if (!(beta > 0.5 && beta <= 1.0)) throw Error(ErrorKind::InvalidBeta, "beta must lie in (1/2, 1]");
}

void check_positive(double v, const char* what) {
    if (!(v > 0.0)) throw Error(ErrorKind::InvalidParams, std::string(what) + " must be positive");
}

// positive / 0 = +inf, positive / +inf = 0.
double inverse(double v) {
    if (v < 0.0 || std::isnan(v)) throw Error(ErrorKind::InvalidParams, "profile entries must be nonnegative");
    if (v == 0.0) return kInf;
    return 1.0 / v;
}

double inverse_sum(std::span<const double> values) {
    double s = 0.0;
    for (double v : values) s += inverse(v);
    return s;
}

BoundReport make(std::string name, BoundKind kind, double value, std::vector<std::string> hyp,
                 std::vector<std::pair<std::string, double>> inputs) {
    BoundReport r{std::move(name), kind, value, std::move(hyp), std::move(inputs), false};
    r.degenerate = !std::isfinite(value);
    return r;
}

}  // namespace

const char* to_string(BoundKind kind) {
    switch (kind) {
    case BoundKind::Upper: return "upper";
    case BoundKind::Lower: return "lower";
    case BoundKind::Identity: return "identity";
    }
    return "upper";
}

nlohmann::json to_json(const BoundReport& report) {
    auto num = [](double v) -> nlohmann::json {
        if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
        return v;
    };
    nlohmann::json inputs = nlohmann::json::object();
    for (const auto& [k, v] : report.inputs) inputs[k] = num(v);
    return {{"name", report.name},           {"kind", to_string(report.kind)}, {"value", num(report.value)},
            {"hypotheses", report.hypotheses}, {"inputs", inputs},               {"degenerate", report.degenerate}};
}

BoundReport theorem1_upper(std::span<const double> f, double beta) {
    check_beta(beta);
    if (f.empty()) throw Error(ErrorKind::InvalidParams, "f needs at least f(0)");
    const double k = 1.0 / (2.0 * beta - 1.0);
    const double value = beta * k * inverse(f[0]) + k * inverse_sum(f.subspan(1));
    return make("theorem1_upper", BoundKind::Upper, value, {"beta>1/2", "x0=0", "f(a)<=E[B+C | A=a]"},
                {{"beta", beta}, {"n", static_cast<double>(f.size())}});
}

BoundReport corollary1_upper(std::span<const double> phi, double beta, double total_u) {
    check_positive(total_u, "total control rate");
    std::vector<double> f;
    f.reserve(phi.size() + 1);
    f.push_back(total_u);
    f.insert(f.end(), phi.begin(), phi.end());
    auto r = theorem1_upper(f, beta);
    r.name = "corollary1_upper";
    r.hypotheses = {"constant-policy", "beta>1/2", "x0=0"};
    r.inputs.emplace_back("total_u", total_u);
    return r;
}

BoundReport corollary3_lower(std::span<const double> eta, std::size_t support_size) {
    const std::size_t n = eta.size() + 1;
    if (support_size < 1 || support_size > n - 1)
        throw Error(ErrorKind::InvalidParams, "support size must lie in [1, n-1]");
    const double value = inverse_sum(eta.subspan(support_size - 1));
    return make("corollary3_lower", BoundKind::Lower, value, {"x0<=indicator(support)"},
                {{"n", static_cast<double>(n)}, {"support_size", static_cast<double>(support_size)}});
}

BoundReport corollary4_lower(std::span<const double> eta, std::size_t support_size, double total_u) {
    check_positive(total_u, "total control rate");
    auto r = corollary3_lower(eta, support_size);
    r.name = "corollary4_lower";
    r.value += 1.0 / total_u;
    r.hypotheses = {"constant-policy", "x0=0"};
    r.inputs.emplace_back("total_u", total_u);
    r.degenerate = !std::isfinite(r.value);
    return r;
}

BoundReport corollary5_lower(const Graph& g, std::span<const NodeId> support, std::size_t exhaustive_limit) {
    const std::size_t n = g.size();
    if (n > exhaustive_limit || n > 63)
        throw Error(ErrorKind::TooLarge, "exhaustive superset search limited to n <= " + std::to_string(exhaustive_limit));
    std::vector<std::uint8_t> in(n, 0);
    for (NodeId v : support) {
        if (v >= n) throw Error(ErrorKind::InvalidParams, "support node out of range");
        in[v] = 1;
    }
    std::vector<NodeId> free;
    for (std::size_t i = 0; i < n; ++i)
        if (!in[i]) free.push_back(static_cast<NodeId>(i));
    const std::vector<std::pair<std::string, double>> inputs{
        {"n", static_cast<double>(n)}, {"support_size", static_cast<double>(n - free.size())}};
    const std::vector<std::string> hyp{"x0=0", "support-controlled"};
    if (free.empty()) {
        auto r = make("corollary5_lower", BoundKind::Lower, kInf, hyp, inputs);
        r.degenerate = true;
        return r;
    }
    // Gray-code walk over subsets of the free nodes, leaving out R = V.
    double z = boundary(g, std::span<const std::uint8_t>(in));
    double best = support.empty() ? kInf : z;
    const std::uint64_t count = std::uint64_t{1} << free.size();
    for (std::uint64_t k = 1; k < count; ++k) {
        const NodeId v = free[static_cast<std::size_t>(std::countr_zero(k))];
        double to_set = 0.0;
        const auto nb = g.neighbors(v);
        const auto wt = g.weights(v);
        for (std::size_t e = 0; e < nb.size(); ++e)
            if (in[nb[e]]) to_set += wt[e];
        if (in[v]) {
            in[v] = 0;
            z += 2.0 * to_set - g.strength(v);
        } else {
            in[v] = 1;
            z += g.strength(v) - 2.0 * to_set;
        }
        const std::uint64_t gray = k ^ (k >> 1);
        if (gray == count - 1) continue;
        if (gray == 0 && support.empty()) continue;
        best = std::min(best, z);
    }
    return make("corollary5_lower", BoundKind::Lower, inverse(best), hyp, inputs);
}

BoundReport corollary5_lower_given(const Graph& g, std::span<const NodeId> support, std::span<const NodeId> R) {
    std::vector<std::uint8_t> in(g.size(), 0);
    for (NodeId v : R) {
        if (v >= g.size()) throw Error(ErrorKind::InvalidParams, "node out of range");
        in[v] = 1;
    }
    for (NodeId v : support)
        if (v >= g.size() || !in[v]) throw Error(ErrorKind::SupportNotSubset, "R must contain the control support");
    const double z = boundary(g, std::span<const std::uint8_t>(in));
    return make("corollary5_lower", BoundKind::Lower, inverse(z), {"x0=0", "support-controlled", "given-set"},
                {{"n", static_cast<double>(g.size())}, {"R_size", static_cast<double>(R.size())}});
}

BoundReport log_lower(double alpha, std::size_t n, std::size_t support_size) {
    check_positive(alpha, "alpha");
    if (support_size < 1 || support_size > n) throw Error(ErrorKind::InvalidParams, "support size must lie in [1, n]");
    const double value = std::log(static_cast<double>(n) / static_cast<double>(support_size)) / alpha;
    return make("log_lower", BoundKind::Lower, value, {"alpha/Delta-scaling", "x0=0"},
                {{"alpha", alpha}, {"n", static_cast<double>(n)}, {"support_size", static_cast<double>(support_size)}});
}

BoundReport expander_upper(double beta, double total_u, double gamma, std::size_t n) {
    check_beta(beta);
    check_positive(total_u, "total control rate");
    check_positive(gamma, "expansion constant");
    if (n < 2) throw Error(ErrorKind::InvalidParams, "n must be at least 2");
    const double k = 1.0 / (2.0 * beta - 1.0);
    const double value = beta * k / total_u + (2.0 * std::log(static_cast<double>(n) / 2.0) + 2.0) * k / gamma;
    return make("expander_upper", BoundKind::Upper, value, {"constant-policy", "beta>1/2", "x0=0", "expander"},
                {{"beta", beta}, {"total_u", total_u}, {"gamma", gamma}, {"n", static_cast<double>(n)}});
}

SbmBoundPair sbm_bounds(double beta, double total_u, std::size_t n, double c, double p, std::size_t L,
                        double alpha) {
    check_beta(beta);
    check_positive(total_u, "total control rate");
    check_positive(alpha, "alpha");
    if (!(c > 0.0 && c <= 0.5) || !(p > 0.0 && p <= 1.0) || L < 1 || n < 2)
        throw Error(ErrorKind::InvalidParams, "invalid SBM parameters");
    const double nd = static_cast<double>(n);
    const double Ld = static_cast<double>(L);
    const std::vector<std::pair<std::string, double>> inputs{{"beta", beta}, {"total_u", total_u}, {"n", nd},
                                                             {"c", c},       {"p", p},             {"L", Ld},
                                                             {"alpha", alpha}};
    const double k = 1.0 / (2.0 * beta - 1.0);
    const double lower = (1.0 - c) * nd * p / (alpha * Ld);
    const double upper =
        k * (2.0 * nd / (Ld * alpha) + (12.0 / (c * alpha * p)) * (std::log(nd / 2.0) + 1.0)) + beta * k / total_u;
    return {make("sbm_lower", BoundKind::Lower, lower, {"whp-over-graph", "support-in-one-block", "x0=0"}, inputs),
            make("sbm_upper", BoundKind::Upper, upper, {"whp-over-graph", "constant-policy", "beta>1/2", "x0=0"},
                 inputs)};
}

BoundReport ring_lower(std::size_t n, double expected_cost) {
    check_positive(expected_cost, "expected cost");
    const double raw = static_cast<double>(n) / (4.0 * expected_cost) - 0.25;
    auto r = make("ring_lower", BoundKind::Lower, std::max(raw, 0.0), {"ring", "x0=0"},
                  {{"n", static_cast<double>(n)}, {"expected_cost", expected_cost}});
    r.degenerate = raw <= 0.0;
    return r;
}

FeedbackBoundPair feedback_bounds(std::span<const double> phi, double K, double beta) {
    check_beta(beta);
    check_positive(K, "K");
    const double k = 1.0 / (2.0 * beta - 1.0);
    const auto floored_sum = [&] {
        double s = 0.0;
        for (double v : phi) s += inverse(std::max(v, K));
        return s;
    }();
    const auto violations = static_cast<double>(std::count_if(phi.begin(), phi.end(), [&](double v) { return v < K; }));
    const std::vector<std::pair<std::string, double>> inputs{
        {"K", K}, {"beta", beta}, {"n", static_cast<double>(phi.size() + 1)}};
    return {make("feedback_time_upper", BoundKind::Upper, beta * k / K + k * floored_sum,
                 {"feedback-policy", "beta>1/2", "x0=0"}, inputs),
            make("feedback_cost_upper", BoundKind::Upper, (beta + violations) * k,
                 {"feedback-policy", "beta>1/2", "x0=0"}, inputs)};
}

FeedbackBoundPair sbm_feedback_upper(double beta, double K, double c, double p, double alpha, std::size_t n) {
    check_beta(beta);
    check_positive(K, "K");
    if (!(c > 0.0 && c <= 0.5) || !(p > 0.0 && p <= 1.0) || !(alpha > 0.0) || n < 2)
        throw Error(ErrorKind::InvalidParams, "invalid SBM parameters");
    if (!(K < c * alpha * p / 2.0)) throw Error(ErrorKind::KTooLarge, "needs K < c*alpha*p/2");
    const double k = 1.0 / (2.0 * beta - 1.0);
    const double nd = static_cast<double>(n);
    const double time = beta * k / K + k * (2.0 / K + (12.0 / (c * alpha * p)) * (std::log(nd / 2.0) + 1.0));
    const std::vector<std::pair<std::string, double>> inputs{{"beta", beta}, {"K", K},         {"c", c},
                                                             {"p", p},       {"alpha", alpha}, {"n", nd}};
    const std::vector<std::string> hyp{"whp-over-graph", "feedback-policy", "K<c*alpha*p/2", "beta>1/2", "x0=0"};
    return {make("sbm_feedback_time_upper", BoundKind::Upper, time, hyp, inputs),
            make("sbm_feedback_cost_upper", BoundKind::Upper, (2.0 + beta) * k, hyp, inputs)};
}

double moran_lower(double beta) {
    check_beta(beta);
    return (2.0 * beta - 1.0) / beta;
}

double birth_death_survival(double beta, std::size_t n, std::size_t a) {
    if (!(beta >= 0.5 && beta <= 1.0)) throw Error(ErrorKind::InvalidBeta, "beta must lie in [1/2, 1]");
    if (a < 1 || a > n) throw Error(ErrorKind::InvalidParams, "a must lie in [1, n]");
    const double m = static_cast<double>(n - a + 1);
    if (a == n) return 1.0;
    if (beta == 0.5) return 1.0 / m;
    const double rho = (1.0 - beta) / beta;
    // 1 - rho written as (2 beta - 1) / beta keeps the result >= moran_lower after rounding.
    return (2.0 * beta - 1.0) / beta / (1.0 - std::pow(rho, m));
}

}  // namespace evospread
