#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "reference_configs.hpp"
#include "ringpursuit/reachability.hpp"

using namespace ringpursuit;

namespace {

const ScenarioParams kNominal = refcfg::nominal();

oracle::Setup setup(const ScenarioParams& p, double psi, Direction d) {
    return {p.R(), p.rho(), p.gamma(), p.r(), psi, sign(d)};
}

HeadingIntervalSet uniform(HeadingLabel l) { return {{{0.0, kTwoPi, l}}, 1e-6}; }

std::vector<HeadingLabel> labels_on_grid(const std::vector<PursuerSpec>& ps, int grid = 720) {
    return sample_labels(escape_set(kNominal, ps), grid);
}

// Grid points whose sampled label sits within `tol` of a boundary of either set
// are skipped by the pointwise comparisons: both sets localise boundaries
// only to within their resolution.
bool near_boundary(const HeadingIntervalSet& s, double psi, double tol) {
    for (const auto& iv : s.intervals) {
        if (std::abs(iv.lo - psi) < tol || std::abs(iv.hi - psi) < tol) return true;
    }
    return false;
}

}  // namespace

TEST(Measure, TrivialSets) {
    EXPECT_DOUBLE_EQ(escape_measure(uniform(HeadingLabel::Escape)), kTwoPi);
    EXPECT_DOUBLE_EQ(escape_measure(uniform(HeadingLabel::Capture)), 0.0);
    const HeadingIntervalSet s = escape_set(kNominal, refcfg::even_cw());
    EXPECT_NEAR(s.measure(HeadingLabel::Escape) + s.measure(HeadingLabel::Capture), kTwoPi, 1e-12);
    EXPECT_NO_THROW(s.validate());
    EXPECT_STREQ(to_string(HeadingLabel::Escape), "ESCAPE");
}

TEST(Predicate, ImmediateCaptureForEveryHeading) {
    const PursuerSpec close{0.1, Direction::CW};  // 0.61 from (0.4, 0)
    const ScenarioParams p(1.0, 0.65, 0.5, 0.4);
    for (int k = 0; k < 72; ++k) EXPECT_TRUE(capture_predicate(p, kTwoPi * k / 72, close));
    EXPECT_EQ(escape_measure(escape_set(p, {close})), 0.0);
}

TEST(Predicate, StartsJustBeyondTheWorstCaseEscape) {
    for (double psi : {3.5, 4.2, 5.0265, 5.8}) {
        for (Direction d : {Direction::CW, Direction::CCW}) {
            const WorstCaseResult w = worst_case_start(kNominal, psi, d);
            const double beyond = w.solution.theta_f - sign(d) * (w.travel + 0.1);
            EXPECT_FALSE(capture_predicate(kNominal, psi, {beyond, d}));
            EXPECT_FALSE(oracle::captures(setup(kNominal, psi, d), beyond));
            const double inside = w.solution.theta_f - sign(d) * (w.travel - 0.05);
            EXPECT_TRUE(capture_predicate(kNominal, psi, {inside, d}));
        }
    }
}

TEST(Predicate, FavorableUsesTheOtherDirection) {
    int found = 0;
    for (int k = 0; k < 360 && found < 5; ++k) {
        const double psi = kTwoPi * (k + 0.5) / 360;
        const double theta0 = 2.0;
        const auto cw = setup(kNominal, psi, Direction::CW);
        const auto ccw = setup(kNominal, psi, Direction::CCW);
        if (oracle::captures(cw, theta0) || !oracle::captures(ccw, theta0)) continue;
        ++found;
        EXPECT_FALSE(capture_predicate(kNominal, psi, {theta0, Direction::CW}));
        EXPECT_TRUE(capture_predicate(kNominal, psi, {theta0, Direction::CW, DirectionPolicy::Favorable}));
    }
    EXPECT_EQ(found, 5);
}

TEST(Predicate, LeastTravelMatchesDenseWindow) {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> urho(0.05, 0.9), ug(0.1, 0.9), u01(0.0, 1.0), upsi(0.0, kTwoPi);
    for (int i = 0; i < 150; ++i) {
        const double rho = urho(rng);
        const ScenarioParams p(1.0, rho, ug(rng), u01(rng) * (1.0 - rho) * 0.98);
        const double psi = upsi(rng);
        const Direction d = i % 2 ? Direction::CW : Direction::CCW;
        EXPECT_NEAR(least_travel_offset(p, psi, d), oracle::capture_window(setup(p, psi, d)).least, 1e-7);
    }
}

TEST(Predicate, FastPathAgreesWithSimulation) {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (const auto& ps : {refcfg::single_cw(), refcfg::even_opposite(), refcfg::even_favorable()}) {
        for (int i = 0; i < 360; ++i) {
            const double psi = u(rng);
            for (const auto& pu : ps) {
                EXPECT_EQ(capture_predicate(kNominal, psi, pu), simulated_capture_predicate(kNominal, psi, pu))
                    << psi << " " << pu.theta_p0;
            }
        }
    }
}

TEST(Predicate, OutsideTheClosedFormDomainFallsBackToSimulation) {
    const ScenarioParams p(1.0, 0.7, 0.5, 0.5);
    ASSERT_FALSE(capture_arc_exact(p));
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (int i = 0; i < 100; ++i) {
        const double psi = u(rng);
        const PursuerSpec pu{u(rng), Direction::CCW};
        EXPECT_EQ(capture_predicate(p, psi, pu), simulated_capture_predicate(p, psi, pu));
    }
}

TEST(EscapeSet, CoversTheCircleAndLocalisesBoundaries) {
    const HeadingIntervalSet s = escape_set(kNominal, refcfg::single_cw());
    ASSERT_NO_THROW(s.validate());
    EXPECT_GE(s.boundary_count(), 2u);
    for (std::size_t i = 1; i < s.intervals.size(); ++i) {
        const double b = s.intervals[i].lo;
        const std::vector<PursuerSpec> ps = refcfg::single_cw();
        EXPECT_NE(heading_label(kNominal, b - s.resolution, ps), heading_label(kNominal, b + s.resolution, ps)) << b;
    }
}

TEST(EscapeSet, SinglePursuerEscapesBehindItsReach) {
    // Headings aimed just past the pursuer, against its motion, are out of reach.
    const HeadingIntervalSet s = escape_set(kNominal, refcfg::single_cw());
    EXPECT_GT(escape_measure(s), 0.0);
    EXPECT_LT(escape_measure(s), kTwoPi);
    EXPECT_EQ(s.label_at(heading_for_exit(kNominal, kPi / 2.0 + 0.3)), HeadingLabel::Escape);
    EXPECT_EQ(s.label_at(heading_for_exit(kNominal, kPi / 2.0 - 0.3)), HeadingLabel::Capture);
}

TEST(EscapeSet, IntersectionLaw) {
    for (const auto& ps : {refcfg::consecutive_cw(), refcfg::even_cw(), refcfg::even_opposite()}) {
        const auto both = labels_on_grid(ps);
        const auto first = labels_on_grid({ps[0]});
        const auto second = labels_on_grid({ps[1]});
        for (std::size_t k = 0; k < both.size(); ++k) {
            const bool escape = first[k] == HeadingLabel::Escape && second[k] == HeadingLabel::Escape;
            EXPECT_EQ(both[k] == HeadingLabel::Escape, escape) << k;
        }
    }
}

TEST(EscapeSet, AddingAPursuerNeverEnlargesEscape) {
    const double one = escape_measure(escape_set(kNominal, refcfg::single_cw()));
    const double two = escape_measure(escape_set(kNominal, refcfg::even_cw()));
    EXPECT_LE(two, one);
    EXPECT_LE(escape_measure(escape_set(kNominal, refcfg::consecutive_cw())), one);
}

TEST(EscapeSet, FavorableInsideFixed) {
    const auto fav = labels_on_grid(refcfg::even_favorable());
    for (const auto& fixed : {refcfg::even_cw(), refcfg::even_opposite()}) {
        const auto f = labels_on_grid(fixed);
        for (std::size_t k = 0; k < fav.size(); ++k) {
            if (fav[k] == HeadingLabel::Escape) {
                EXPECT_EQ(f[k], HeadingLabel::Escape) << k;
            }
        }
    }
}

TEST(EscapeSet, MonotoneInRhoAndGamma) {
    const auto ps = refcfg::even_cw();
    double prev = kTwoPi;
    for (double rho : {0.1, 0.3, 0.5, 0.6}) {
        const double m = escape_measure(escape_set(kNominal.with_rho(rho), ps));
        EXPECT_LE(m, prev + 1e-9) << rho;
        prev = m;
    }
    prev = kTwoPi;
    for (double g : {0.2, 0.4, 0.6, 0.8}) {
        const double m = escape_measure(escape_set(kNominal.with_gamma(g), ps));
        EXPECT_LE(m, prev + 1e-9) << g;
        prev = m;
    }
}

TEST(EscapeSet, GridRefinementConsistency) {
    const auto ps = refcfg::even_opposite();
    const HeadingIntervalSet coarse = escape_set(kNominal, ps, {720, 1e-6});
    const HeadingIntervalSet fine = escape_set(kNominal, ps, {2880, 1e-6});
    EXPECT_EQ(coarse.boundary_count(), fine.boundary_count());
    EXPECT_LE(std::abs(escape_measure(coarse) - escape_measure(fine)),
              4.0 * 1e-6 * static_cast<double>(coarse.boundary_count()));
    const auto a = sample_labels(coarse, 720);
    const auto b = sample_labels(fine, 720);
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double psi = kTwoPi * k / 720;
        if (near_boundary(coarse, psi, 1e-5)) continue;
        EXPECT_EQ(a[k], b[k]) << k;
    }
}

TEST(EscapeSet, RejectsBadOptions) {
    EXPECT_THROW(escape_set(kNominal, {}), DomainError);
    EXPECT_THROW(escape_set(kNominal, refcfg::single_cw(), {1, 1e-6}), DomainError);
    EXPECT_THROW(escape_set(kNominal, refcfg::single_cw(), {720, 0.0}), DomainError);
}
