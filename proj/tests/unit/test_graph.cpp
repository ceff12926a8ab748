#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "evospread/errors.hpp"
#include "evospread/graph.hpp"
#include "evospread/graph_io.hpp"
#include "evospread/profiles.hpp"
#include "support.hpp"

using namespace evospread;
using doctest::Approx;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InvalidParams;
}

std::size_t cross_edges(const Graph& g, std::size_t n1) {
    return static_cast<std::size_t>(std::count_if(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
        return (e.i < n1) != (e.j < n1);
    }));
}

}  // namespace

TEST_CASE("build validates and measures the graph") {
    const Edge one[] = {{0, 1, 1.0}};
    auto g = Graph::build(2, one);
    CHECK(g.max_degree() == 1);
    CHECK(g.weight(0, 1) == 1.0);
    CHECK(g.weight(1, 0) == 1.0);

    CHECK(kind_of([&] { Graph::build(3, one); }) == ErrorKind::Disconnected);

    const Edge tri[] = {{0, 1, 0.5}, {1, 2, 0.5}, {0, 2, 0.5}};
    auto t = Graph::build(3, tri);
    CHECK(t.max_degree() == 2);
    CHECK(t.weight(2, 0) == 0.5);

    const Edge dup[] = {{0, 1, 1.0}, {1, 0, 2.0}};
    CHECK(kind_of([&] { Graph::build(2, dup); }) == ErrorKind::DuplicateEdge);
    const Edge loop[] = {{0, 0, 1.0}, {0, 1, 1.0}};
    CHECK(kind_of([&] { Graph::build(2, loop); }) == ErrorKind::SelfLoop);
    const Edge neg[] = {{0, 1, 0.0}};
    CHECK(kind_of([&] { Graph::build(2, neg); }) == ErrorKind::NonPositiveWeight);
    const Edge far[] = {{0, 5, 1.0}};
    CHECK(kind_of([&] { Graph::build(2, far); }) == ErrorKind::InvalidParams);
}

TEST_CASE("complete and ring generators") {
    auto k4 = complete(4, 1.0);
    CHECK(k4.edge_count() == 6);
    for (const auto& e : k4.edges()) CHECK(e.w == Approx(1.0 / 3.0));
    auto k2 = complete(2, 2.0);
    CHECK(k2.edge_count() == 1);
    CHECK(k2.edges()[0].w == 2.0);
    auto k1000 = complete(1000, 1.0);
    CHECK(k1000.edge_count() == 1000 * 999 / 2);
    CHECK(k1000.edges().front().w == Approx(1.0 / 999.0));
    CHECK(k1000.edges().back().w == Approx(1.0 / 999.0));

    auto r6 = ring(6, 1.0);
    CHECK(r6.edge_count() == 6);
    for (const auto& e : r6.edges()) CHECK(e.w == 0.5);
    CHECK(r6.weight(5, 0) == 0.5);
    auto r3 = ring(3, 1.0);
    CHECK(r3.edge_count() == 3);
    CHECK(kind_of([] { ring(2, 1.0); }) == ErrorKind::RingTooSmall);
}

TEST_CASE("sbm structure") {
    Engine eng = make_stream(3, 0, StreamTag::Graph);
    auto g = sbm({2000, 0.4, 0.1, 5, 1.0}, eng);
    REQUIRE(g.first_block_size().has_value());
    CHECK(*g.first_block_size() == 800);
    CHECK(cross_edges(g, 800) == 5);
    const double w = g.edges().front().w;
    CHECK(w == Approx(1.0 / static_cast<double>(g.max_degree())));

    auto full = sbm({20, 0.5, 1.0, 3, 1.0}, eng);
    CHECK(cross_edges(full, 10) == 3);
    CHECK(full.edge_count() == 2 * 45 + 3);

    // Explicit divisor.
    SbmParams prm{200, 0.4, 0.1, 5, 1.0, 20.0};
    auto scaled = sbm(prm, eng);
    for (const auto& e : scaled.edges()) CHECK(e.w == 1.0 / 20.0);

    CHECK(kind_of([&] { sbm({100, 0.6, 0.1, 5, 1.0}, eng); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([&] { sbm({100, 0.4, 0.0, 5, 1.0}, eng); }) == ErrorKind::InvalidParams);
    CHECK(kind_of([&] { sbm({100, 0.4, 0.1, 0, 1.0}, eng); }) == ErrorKind::InvalidParams);
}

TEST_CASE("sbm intra-block edge count matches the binomial mean") {
    // 0.1 * (C(80,2) + C(120,2)) = 1030.
    std::vector<double> counts;
    for (std::uint64_t i = 0; i < 100; ++i) {
        Engine eng = make_stream(17, i, StreamTag::Graph);
        auto g = sbm({200, 0.4, 0.1, 5, 1.0}, eng);
        counts.push_back(static_cast<double>(g.edge_count() - cross_edges(g, 80)));
    }
    const auto s = testsupport::stats(counts);
    CHECK(std::fabs(s.mean - 1030.0) <= 3.0 * s.se);
}

TEST_CASE("erdos-renyi generator") {
    Engine eng = make_stream(5, 0, StreamTag::Graph);
    auto g = erdos_renyi(5, 1.0, 1.0, eng);
    auto k5 = complete(5, 1.0);
    REQUIRE(g.edge_count() == k5.edge_count());
    for (NodeId i = 0; i < 5; ++i)
        for (NodeId j = 0; j < 5; ++j) CHECK(g.weight(i, j) == Approx(k5.weight(i, j)));

    auto h = erdos_renyi(100, 0.5, 1.0, eng);
    const double sd = std::sqrt(4950 * 0.25);
    CHECK(std::fabs(static_cast<double>(h.edge_count()) - 2475.0) <= 3.0 * sd);

    CHECK(kind_of([&] { erdos_renyi(50, 0.0, 1.0, eng); }) == ErrorKind::GenerationFailed);
}

TEST_CASE("boundary") {
    const Edge tri[] = {{0, 1, 0.5}, {1, 2, 0.5}, {0, 2, 0.5}};
    auto t = Graph::build(3, tri);
    const NodeId zero[] = {0};
    CHECK(boundary(t, std::span<const NodeId>(zero)) == Approx(1.0));
    CHECK(boundary(t, std::span<const NodeId>()) == 0.0);
    const NodeId all[] = {0, 1, 2};
    CHECK(boundary(t, std::span<const NodeId>(all)) == 0.0);
    CHECK(boundary_mask(t, 0b001) == Approx(1.0));
}

TEST_CASE("boundary symmetry and positivity on random graphs") {
    Engine eng = make_stream(99, 0);
    for (int gi = 0; gi < 10; ++gi) {
        auto g = testsupport::random_connected(12 + gi, 0.2, eng);
        const std::uint64_t full = (std::uint64_t{1} << g.size()) - 1;
        for (int k = 0; k < 100; ++k) {
            const std::uint64_t m = uniform_index(eng, full + 1);
            const double z = boundary_mask(g, m);
            CHECK(z == boundary_mask(g, full ^ m));
            if (m != 0 && m != full) CHECK(z > 0.0);
        }
    }
}

TEST_CASE("profile examples") {
    auto k4 = profiles(complete(4, 1.0), ProfileMode::ClosedForm);
    CHECK(k4.phi[0] == Approx(1.0));
    CHECK(k4.phi[1] == Approx(4.0 / 3.0));
    CHECK(k4.phi[2] == Approx(1.0));
    auto k4x = profiles(complete(4, 1.0), ProfileMode::Exact);
    for (std::size_t a = 0; a < 3; ++a) CHECK(k4x.phi[a] == Approx(k4.phi[a]));

    auto r6 = profiles(ring(6, 1.0), ProfileMode::Exact);
    const double eta6[] = {1, 2, 3, 2, 1};
    for (std::size_t a = 0; a < 5; ++a) {
        CHECK(r6.phi[a] == Approx(1.0));
        CHECK(r6.eta[a] == Approx(eta6[a]));
    }

    auto p3 = profiles(path(3, 1.0), ProfileMode::Exact);
    CHECK(p3.phi == std::vector<double>{1.0, 1.0});
    CHECK(p3.eta == std::vector<double>{2.0, 2.0});
    CHECK(p3.phi_at(1) == 1.0);
}

TEST_CASE("profile errors") {
    CHECK(kind_of([] { profiles(complete(23, 1.0), ProfileMode::Exact); }) == ErrorKind::TooLargeForExhaustive);
    CHECK(kind_of([] { profiles(path(4, 1.0), ProfileMode::ClosedForm); }) == ErrorKind::NoClosedForm);
}

TEST_CASE("closed forms agree with enumeration for n <= 10") {
    for (std::size_t n = 3; n <= 10; ++n) {
        for (const Graph& g : {complete(n, 1.0), ring(n, 1.3)}) {
            const auto cf = profiles(g, ProfileMode::ClosedForm);
            const auto ex = profiles(g, ProfileMode::Exact);
            for (std::size_t a = 0; a + 1 < n; ++a) {
                CHECK(std::fabs(cf.phi[a] - ex.phi[a]) <= 1e-12 * cf.phi[a]);
                CHECK(std::fabs(cf.eta[a] - ex.eta[a]) <= 1e-12 * cf.eta[a]);
            }
        }
    }
}

TEST_CASE("exact profiles match brute force and bracket every subset") {
    Engine eng = make_stream(7, 0);
    for (int gi = 0; gi < 8; ++gi) {
        auto g = testsupport::random_connected(6 + gi, 0.3, eng);
        const auto p = profiles(g, ProfileMode::Exact);
        std::vector<double> phi, eta;
        testsupport::brute_profiles(g, phi, eta);
        const std::size_t n = g.size();
        for (std::size_t a = 0; a + 1 < n; ++a) {
            CHECK(p.phi[a] == Approx(phi[a]).epsilon(1e-12));
            CHECK(p.eta[a] == Approx(eta[a]).epsilon(1e-12));
            CHECK(p.phi[a] > 0.0);
            CHECK(p.phi[a] <= p.eta[a]);
            CHECK(p.phi[a] == Approx(p.phi[n - 2 - a]).epsilon(1e-12));
            CHECK(p.eta[a] == Approx(p.eta[n - 2 - a]).epsilon(1e-12));
        }
        const std::uint64_t full = (std::uint64_t{1} << n) - 1;
        for (int k = 0; k < 1000; ++k) {
            const std::uint64_t m = 1 + uniform_index(eng, full - 1);
            const auto a = static_cast<std::size_t>(__builtin_popcountll(m));
            const double z = boundary_mask(g, m);
            CHECK(p.phi[a - 1] <= z + 1e-12);
            CHECK(z <= p.eta[a - 1] + 1e-12);
        }
    }
}

TEST_CASE("eta is at most alpha * a under the alpha/Delta scaling") {
    Engine eng = make_stream(8, 0, StreamTag::Graph);
    for (int gi = 0; gi < 5; ++gi) {
        auto g = erdos_renyi(14, 0.4, 1.5, eng);
        const auto p = profiles(g, ProfileMode::Exact);
        for (std::size_t a = 1; a < g.size(); ++a) CHECK(p.eta_at(a) <= 1.5 * static_cast<double>(a) + 1e-12);
    }
    const auto r = profiles(ring(9, 2.0), ProfileMode::Exact);
    for (std::size_t a = 1; a < 9; ++a) CHECK(r.eta_at(a) <= 2.0 * static_cast<double>(a) + 1e-12);
}

TEST_CASE("sbm phi bound") {
    const auto b = sbm_phi_bound(2000, 0.4, 0.1, 1.0, 5);
    REQUIRE(b.size() == 1999);
    CHECK(b[800 - 1] == Approx(0.0025));
    CHECK(b[1200 - 1] == Approx(0.0025));
    CHECK(b[1 - 1] == Approx(0.02));
    CHECK(b[1000 - 1] == Approx(4.0));
}

TEST_CASE("floor profile") {
    const std::vector<double> phi{1, 0.2, 1};
    CHECK(floor_profile(phi, 0.25) == std::vector<double>{1, 0.25, 1});
    CHECK(floor_profile(phi, 0.0) == phi);
    CHECK(floor_profile(std::vector<double>{1, 1}, 5.0) == std::vector<double>{5, 5});
}

TEST_CASE("edge-list round trip is bit exact") {
    Engine eng = make_stream(11, 0, StreamTag::Graph);
    auto g = sbm({60, 0.4, 0.3, 3, 1.0}, eng);
    std::stringstream ss;
    write_graph(ss, g);
    auto h = read_graph(ss);
    CHECK(h.size() == g.size());
    CHECK(h.alpha() == g.alpha());
    CHECK(h.tag() == g.tag());
    REQUIRE(h.edge_count() == g.edge_count());
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
        CHECK(h.edges()[k].i == g.edges()[k].i);
        CHECK(h.edges()[k].j == g.edges()[k].j);
        CHECK(h.edges()[k].w == g.edges()[k].w);
    }
    std::stringstream bad("3 1 custom\n0 1 x\n");
    CHECK(kind_of([&] { read_graph(bad); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { load_graph("/nonexistent/graph.txt"); }) == ErrorKind::IoError);
}
