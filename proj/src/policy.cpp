#include "evospread/policy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "evospread/errors.hpp"

namespace evospread {

namespace {

void check_rate_vector(const std::vector<double>& u, std::size_t n, const char* what) {
    if (u.size() != n)
        throw Error(ErrorKind::InvalidParams, std::string(what) + " has length " + std::to_string(u.size()) +
                                                  ", expected " + std::to_string(n));
    for (double v : u)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw Error(ErrorKind::InvalidParams, std::string(what) + " has a negative or non-finite rate");
}

double sum(const std::vector<double>& u) { return std::accumulate(u.begin(), u.end(), 0.0); }

std::size_t segment_at(const OpenLoopPolicy& p, double t) {
    return static_cast<std::size_t>(std::upper_bound(p.breakpoints.begin(), p.breakpoints.end(), t) -
                                    p.breakpoints.begin());
}

double parse_real(std::string_view s) {
    // std::from_chars for double is not available on every toolchain we target.
    std::string tmp(s);
    char* end = nullptr;
    const double v = std::strtod(tmp.c_str(), &end);
    if (tmp.empty() || end != tmp.c_str() + tmp.size())
        throw Error(ErrorKind::ParseError, "not a number: '" + tmp + "'");
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string_view to_string(TargetRule rule) {
    switch (rule) {
    case TargetRule::MaxContact: return "max-contact";
    case TargetRule::LowestIndex: return "lowest-index";
    case TargetRule::RandomZero: return "random-zero";
    }
    return "max-contact";
}

TargetRule parse_target_rule(std::string_view text) {
    if (text == "max-contact") return TargetRule::MaxContact;
    if (text == "lowest-index") return TargetRule::LowestIndex;
    if (text == "random-zero") return TargetRule::RandomZero;
    throw Error(ErrorKind::ParseError, "unknown target rule '" + std::string(text) + "'");
}

void validate_policy(const ControlPolicy& policy, std::size_t n, bool start_all_zero) {
    if (const auto* c = std::get_if<ConstantPolicy>(&policy)) {
        check_rate_vector(c->u, n, "constant control");
        if (start_all_zero && !(sum(c->u) > 0.0))
            throw Error(ErrorKind::PolicyViolatesAssumption2, "constant control is zero at the all-0 state");
    } else if (const auto* o = std::get_if<OpenLoopPolicy>(&policy)) {
        if (o->rates.size() != o->breakpoints.size() + 1)
            throw Error(ErrorKind::InvalidParams, "open-loop schedule needs one more segment than breakpoints");
        for (std::size_t s = 0; s < o->breakpoints.size(); ++s) {
            const double lo = s == 0 ? 0.0 : o->breakpoints[s - 1];
            if (!(o->breakpoints[s] > lo) || !std::isfinite(o->breakpoints[s]))
                throw Error(ErrorKind::InvalidParams, "breakpoints must be positive and increasing");
        }
        for (const auto& r : o->rates) check_rate_vector(r, n, "open-loop segment");
        if (start_all_zero && !(sum(o->rates.front()) > 0.0))
            throw Error(ErrorKind::PolicyViolatesAssumption2, "first open-loop segment is zero at the all-0 state");
    } else {
        const auto& f = std::get<FeedbackPolicy>(policy);
        if (!(f.K > 0.0) || !std::isfinite(f.K))
            throw Error(ErrorKind::InvalidParams, "feedback gain K must be positive");
    }
}

std::vector<NodeId> policy_support(const ControlPolicy& policy, std::size_t n) {
    std::vector<std::uint8_t> on(n, 0);
    if (const auto* c = std::get_if<ConstantPolicy>(&policy)) {
        for (std::size_t i = 0; i < n && i < c->u.size(); ++i) on[i] = c->u[i] > 0.0;
    } else if (const auto* o = std::get_if<OpenLoopPolicy>(&policy)) {
        for (const auto& r : o->rates)
            for (std::size_t i = 0; i < n && i < r.size(); ++i) on[i] |= r[i] > 0.0;
    } else {
        std::fill(on.begin(), on.end(), 1);
    }
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < n; ++i)
        if (on[i]) out.push_back(static_cast<NodeId>(i));
    return out;
}

bool is_time_homogeneous(const ControlPolicy& policy) {
    if (const auto* o = std::get_if<OpenLoopPolicy>(&policy)) return o->breakpoints.empty();
    return true;
}

double feedback_rate(const FeedbackPolicy& policy, std::size_t a, double b, std::size_t n) {
    if (a >= n) return 0.0;
    if (policy.law == FeedbackLaw::FixedRate) return policy.K;
    return b < policy.K ? policy.K - b : 0.0;
}

std::optional<NodeId> feedback_target(const FeedbackPolicy& policy, const Configuration& conf) {
    if (conf.all_ones()) throw Error(ErrorKind::NoZeroNode, "feedback target queried at the all-1 state");
    const std::size_t n = conf.size();
    switch (policy.target) {
    case TargetRule::RandomZero:
        return std::nullopt;
    case TargetRule::LowestIndex:
        for (std::size_t i = 0; i < n; ++i)
            if (!conf.state(static_cast<NodeId>(i))) return static_cast<NodeId>(i);
        break;
    case TargetRule::MaxContact: {
        std::optional<NodeId> best;
        double best_w = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto v = static_cast<NodeId>(i);
            if (conf.state(v)) continue;
            if (conf.up_weight(v) > best_w) {
                best_w = conf.up_weight(v);
                best = v;
            }
        }
        return best;
    }
    }
    throw Error(ErrorKind::NoZeroNode, "no 0-node found");
}

ControlRates control_rates(const ControlPolicy& policy, const Configuration& conf, double t) {
    const std::size_t n = conf.size();
    ControlRates out;
    auto finish = [&] {
        out.total = sum(out.u);
        out.effective = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (!conf.state(static_cast<NodeId>(i))) out.effective += out.u[i];
    };
    if (const auto* c = std::get_if<ConstantPolicy>(&policy)) {
        out.u = c->u;
        finish();
    } else if (const auto* o = std::get_if<OpenLoopPolicy>(&policy)) {
        out.u = o->rates[segment_at(*o, t)];
        finish();
    } else {
        const auto& f = std::get<FeedbackPolicy>(policy);
        out.u.assign(n, 0.0);
        const double mu = feedback_rate(f, conf.ones(), conf.boundary(), n);
        const auto target = feedback_target(f, conf);
        if (target) {
            out.u[*target] = mu;
        } else {
            const double share = mu / static_cast<double>(n - conf.ones());
            for (std::size_t i = 0; i < n; ++i)
                if (!conf.state(static_cast<NodeId>(i))) out.u[i] = share;
        }
        out.total = mu;
        out.effective = mu;
    }
    return out;
}

NodeRates node_rates(const Graph& g, double beta, const Configuration& conf, std::span<const double> U) {
    const std::size_t n = g.size();
    NodeRates r;
    r.lambda_plus.assign(n, 0.0);
    r.lambda_minus.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = static_cast<NodeId>(i);
        if (conf.state(v))
            r.lambda_minus[i] = (1.0 - beta) * conf.weight_to_zeros(v);
        else
            r.lambda_plus[i] = beta * conf.weight_to_ones(v) + U[i];
    }
    return r;
}

std::vector<double> parse_sparse_rates(std::string_view text, std::size_t n) {
    std::vector<double> u(n, 0.0);
    std::vector<std::uint8_t> seen(n, 0);
    text = trim(text);
    if (text.empty()) return u;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto item = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        const auto at = item.find('@');
        if (at == std::string_view::npos)
            throw Error(ErrorKind::ParseError, "expected rate@node, got '" + std::string(item) + "'");
        const double rate = parse_real(trim(item.substr(0, at)));
        const auto node_text = trim(item.substr(at + 1));
        std::size_t node = 0;
        const auto [ptr, ec] = std::from_chars(node_text.data(), node_text.data() + node_text.size(), node);
        if (ec != std::errc() || ptr != node_text.data() + node_text.size())
            throw Error(ErrorKind::ParseError, "bad node index '" + std::string(node_text) + "'");
        if (node >= n) throw Error(ErrorKind::InvalidParams, "control node " + std::to_string(node) + " out of range");
        if (seen[node]) throw Error(ErrorKind::ParseError, "node " + std::to_string(node) + " listed twice");
        if (!(rate >= 0.0)) throw Error(ErrorKind::InvalidParams, "control rates must be nonnegative");
        seen[node] = 1;
        u[node] = rate;
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return u;
}

OpenLoopPolicy parse_schedule(std::string_view text, std::size_t n) {
    OpenLoopPolicy p;
    std::istringstream in{std::string(text)};
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        const auto body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto space = body.find_first_of(" \t");
        if (space == std::string_view::npos)
            throw Error(ErrorKind::ParseError, "schedule line needs `start rates`: '" + std::string(body) + "'");
        const double start = parse_real(body.substr(0, space));
        auto rates = parse_sparse_rates(body.substr(space + 1), n);
        if (first) {
            if (start != 0.0) throw Error(ErrorKind::ParseError, "first schedule segment must start at 0");
            first = false;
        } else {
            p.breakpoints.push_back(start);
        }
        p.rates.push_back(std::move(rates));
    }
    if (p.rates.empty()) throw Error(ErrorKind::ParseError, "empty schedule");
    return p;
}

}  // namespace evospread
