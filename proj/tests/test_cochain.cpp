#include <gtest/gtest.h>

#include <random>

#include "fpcohom/cochain.hpp"
#include "fpcohom/generators.hpp"
#include "fpcohom/oracle.hpp"

using namespace fpcohom;

namespace {

const std::vector<std::pair<int, int>> kDesk{{2, 1}, {2, 2}, {3, 1}, {3, 2}, {5, 1}};

// Dense random cochain over either ring; integer values in [-3, 3].
template <CochainKind Kind>
Cochain<Kind> random_any(const GroupContext& ctx, int n, CoeffRing ring, std::mt19937_64& rng) {
    Cochain<Kind> f(ctx, n, ring);
    for_each_nonidentity_tuple(ctx, n, [&](std::span<const GroupElem> u) {
        f.add(u, static_cast<Coeff>(rng() % 7) - 3);
    });
    return f;
}

}  // namespace

TEST(Cochain, StorageAndNormalization) {
    const GroupContext ctx(3, 2);
    NormalizedCochain a(ctx, 2, CoeffRing::ModP);
    const GroupElem u = ctx.elem({1, 0}), v = ctx.elem({2, 2});
    a.set({u, v}, 4);
    EXPECT_EQ(a.value({u, v}), 1);
    EXPECT_EQ(a.value({ctx.identity(), v}), 0);
    EXPECT_THROW(a.set({ctx.identity(), v}, 1), std::invalid_argument);
    EXPECT_NO_THROW(a.set({ctx.identity(), v}, 0));
    EXPECT_THROW(a.value({u}), std::invalid_argument);
    a.add({u, v}, 2);
    EXPECT_TRUE(a.is_zero());
}

TEST(Cochain, DegreeZeroIsAScalar) {
    const GroupContext ctx(2, 2);
    ICochain f(ctx, 0, CoeffRing::ModP);
    f.set(std::span<const GroupElem>{}, 1);
    EXPECT_EQ(f.value(std::span<const GroupElem>{}), 1);
    EXPECT_TRUE(coboundary_I(f).is_zero());
    EXPECT_TRUE(coboundary_bar(correspond_back(f)).is_zero());
}

TEST(Correspond, IsARelabelling) {
    std::mt19937_64 rng(1);
    for (auto [p, r] : kDesk) {
        const GroupContext ctx(p, r);
        for (int k = 0; k < 100; ++k) {
            const auto a = random_any<CochainKind::Normalized>(ctx, k % 4, CoeffRing::ModP, rng);
            const ICochain f = correspond(a);
            EXPECT_EQ(correspond_back(f), a);
            for (const auto& [key, v] : a.values()) {
                const auto tuple = a.codec().decode(key);
                EXPECT_EQ(eval(f, Tensor::from_tuple(ctx, tuple)), v);
            }
        }
    }
    const GroupContext ctx(2, 2);
    EXPECT_TRUE(correspond(NormalizedCochain(ctx, 2, CoeffRing::ModP)).is_zero());
}

TEST(Eval, RejectsBadTensors) {
    const GroupContext ctx(3, 1);
    const ICochain f = f_gen(ctx, 1);
    EXPECT_THROW(Tensor(ctx, {RingElem::unit(ctx)}), std::invalid_argument);
    EXPECT_THROW(eval(f, Tensor(ctx, {RingElem::t(ctx, 1), RingElem::t(ctx, 1)})), std::invalid_argument);
    ICochain z(ctx, 1, CoeffRing::Integers);
    EXPECT_THROW(eval(z, Tensor(ctx, {RingElem::t(ctx, 1, CoeffRing::ModP)})), std::invalid_argument);
    EXPECT_EQ(eval(f, Tensor(ctx, {RingElem::zero(ctx)})), 0);
}

TEST(Eval, Multilinear) {
    std::mt19937_64 rng(2);
    const GroupContext ctx(3, 2);
    const auto rand_ideal = [&] {
        RingElem a = RingElem::zero(ctx);
        for (std::uint32_t u = 1; u < ctx.order(); ++u)
            a += RingElem::difference(ctx, GroupElem{u}).scaled(static_cast<Coeff>(rng() % 5) - 2);
        return a;
    };
    for (int k = 0; k < 30; ++k) {
        const ICochain f = random_any<CochainKind::I>(ctx, 3, CoeffRing::Integers, rng);
        const RingElem a = rand_ideal(), b = rand_ideal(), x = rand_ideal(), y = rand_ideal();
        const Coeff c = static_cast<Coeff>(rng() % 9) - 4;
        const Coeff lhs = eval(f, Tensor(ctx, {x, a.scaled(c) + b, y}));
        const Coeff rhs = c * eval(f, Tensor(ctx, {x, a, y})) + eval(f, Tensor(ctx, {x, b, y}));
        EXPECT_EQ(lhs, rhs);
    }
}

// Mod-p cochains cannot see factors that differ by p times something.
TEST(Eval, InvariantModP) {
    std::mt19937_64 rng(3);
    for (auto [p, r] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {5, 1}}) {
        const GroupContext ctx(p, r);
        for (int k = 0; k < 20; ++k) {
            const ICochain f = random_any<CochainKind::I>(ctx, 2, CoeffRing::ModP, rng);
            const RingElem a = RingElem::t(ctx, 1), b = RingElem::difference(ctx, GroupElem{static_cast<std::uint32_t>(1 + rng() % (ctx.order() - 1))});
            const RingElem shift = (RingElem::t(ctx, r) * b).scaled(p);
            EXPECT_EQ(eval(f, Tensor(ctx, {a, b})), eval(f, Tensor(ctx, {a + shift, b})));
        }
        // t_i^k with k >= p is p times an element of I.
        MultiIndex big{std::vector<int>(static_cast<std::size_t>(r), 0)};
        big.k[0] = p + 1;
        const ICochain f = random_any<CochainKind::I>(ctx, 2, CoeffRing::ModP, rng);
        EXPECT_EQ(eval(f, Tensor(ctx, {t_monomial(ctx, big), RingElem::t(ctx, 1)})), 0);
    }
}

TEST(CoboundaryBar, HandExample) {
    // p = 2, r = 1, a = x: da(s, s) = a(s) - a(s^2) + a(s) = 2 = 0 mod 2.
    const GroupContext ctx(2, 1);
    const NormalizedCochain a = correspond_back(f_gen(ctx, 1));
    EXPECT_TRUE(coboundary_bar(a).is_zero());
    NormalizedCochain az(ctx, 1, CoeffRing::Integers);
    az.set({ctx.generator(1)}, 1);
    EXPECT_EQ(coboundary_bar(az).value({ctx.generator(1), ctx.generator(1)}), 2);
}

TEST(Coboundary, SquaresToZero) {
    std::mt19937_64 rng(4);
    for (auto [p, r] : kDesk) {
        const GroupContext ctx(p, r);
        const CoboundaryOperator d(ctx);
        for (CoeffRing ring : {CoeffRing::Integers, CoeffRing::ModP})
            for (int k = 0; k < 100; ++k) {
                const int n = k % 4;
                if (n == 3 && ctx.order() > 9) continue;
                const auto a = random_any<CochainKind::Normalized>(ctx, n, ring, rng);
                EXPECT_TRUE(coboundary_bar(coboundary_bar(a)).is_zero());
                const ICochain f = correspond(a);
                EXPECT_TRUE(d.apply(d.apply(f)).is_zero());
            }
    }
}

TEST(Coboundary, FormsAgreeOnRandomCochains) {
    std::mt19937_64 rng(5);
    for (auto [p, r] : kDesk) {
        const GroupContext ctx(p, r);
        for (CoeffRing ring : {CoeffRing::Integers, CoeffRing::ModP})
            for (int k = 0; k < 100; ++k) {
                const auto a = random_any<CochainKind::Normalized>(ctx, k % 3, ring, rng);
                EXPECT_EQ(correspond(coboundary_bar(a)), coboundary_I(correspond(a)));
            }
    }
}

// The F_p path accumulates densely for well-filled inputs; the integer path
// always goes through the hash map. Both must reduce to the same thing.
TEST(Coboundary, DenseAndSparseScatterAgree) {
    std::mt19937_64 rng(6);
    const GroupContext ctx(5, 1);
    for (int n = 1; n <= 3; ++n) {
        const auto f = random_any<CochainKind::I>(ctx, n, CoeffRing::Integers, rng);
        EXPECT_EQ(coboundary_I(f).reduced_mod_p(), coboundary_I(f.reduced_mod_p()));
    }
}

// p = 2 with G acting on Z through a sign character.
TEST(Coboundary, NontrivialSignAction) {
    std::mt19937_64 rng(7);
    const GroupContext ctx(2, 2);
    const SignAction act(ctx, {1, 0});
    EXPECT_FALSE(act.is_trivial());
    EXPECT_EQ(act.sign(ctx.generator(1)), -1);
    EXPECT_EQ(act.sign(ctx.generator(2)), 1);
    EXPECT_THROW(SignAction(GroupContext(3, 1), {1}), std::invalid_argument);
    const CoboundaryOperator d(ctx);
    for (int k = 0; k < 50; ++k) {
        const auto a = random_any<CochainKind::Normalized>(ctx, k % 3, CoeffRing::Integers, rng);
        const NormalizedCochain b = coboundary_bar(a, act);
        EXPECT_EQ(correspond(b), d.apply(correspond(a), act));
        EXPECT_TRUE(coboundary_bar(b, act).is_zero());
    }
    // Degree 0: (da)(u) = (u - 1) a.
    NormalizedCochain c(ctx, 0, CoeffRing::Integers);
    c.set(std::span<const GroupElem>{}, 5);
    EXPECT_EQ(coboundary_bar(c, act).value({ctx.generator(1)}), -10);
    EXPECT_EQ(coboundary_bar(c, act).value({ctx.generator(2)}), 0);
}

TEST(Coboundary, GeneratorsAreCocycles) {
    for (auto [p, r] : kDesk) {
        const GroupContext ctx(p, r);
        for (int i = 1; i <= r; ++i) {
            EXPECT_TRUE(coboundary_I(f_gen(ctx, i)).is_zero());
            EXPECT_TRUE(coboundary_I(h_gen(ctx, i)).is_zero());
        }
    }
}

TEST(Cup, SignConvention) {
    const GroupContext ctx(3, 1);
    const ICochain f = f_gen(ctx, 1);
    const GroupElem s = ctx.generator(1), s2 = ctx.elem({2});
    const ICochain ff = cup(f, f);
    // (f u f)(a x b) = -f(a) f(b).
    EXPECT_EQ(ff.value({s2, s}), mod_reduce(-2, 3));
    EXPECT_EQ(ff.value({s, s}), 2);

    const GroupContext c2(2, 2);
    const ICochain g = cup(f_gen(c2, 1), f_gen(c2, 2));
    EXPECT_EQ(g.value({c2.elem({1, 0}), c2.elem({0, 1})}), 1);
    EXPECT_EQ(g.value({c2.elem({0, 1}), c2.elem({1, 0})}), 0);

    // Two degree-2 factors: sign +1, values multiply.
    const ICochain h = h_gen(ctx, 1);
    const ICochain hh = cup(h, h);
    for (const auto& [kh, vh] : h.values())
        for (const auto& [kg, vg] : h.values()) {
            auto t = h.codec().decode(kh);
            const auto t2 = h.codec().decode(kg);
            t.insert(t.end(), t2.begin(), t2.end());
            EXPECT_EQ(hh.value(t), vh * vg % 3);
        }
    EXPECT_THROW(cup(f, f_gen(c2, 1)), std::invalid_argument);
}

TEST(Cup, ManyEqualsLeftNested) {
    std::mt19937_64 rng(8);
    const GroupContext ctx(3, 2);
    for (int k = 0; k < 20; ++k) {
        std::vector<ICochain> fs;
        for (int j = 0; j < 3; ++j) fs.push_back(random_any<CochainKind::I>(ctx, 1 + (rng() % 2), CoeffRing::ModP, rng));
        const ICochain nested = cup(cup(fs[0], fs[1]), fs[2]);
        EXPECT_EQ(cup_many(fs), nested);
    }
    ICochain one(ctx, 0, CoeffRing::ModP);
    one.add_at(0, 1);
    EXPECT_EQ(cup_many<CochainKind::I>(std::span<const ICochain>{}, ctx, CoeffRing::ModP), one);
}

TEST(Cup, CocyclesGiveCocycles) {
    for (auto [p, r] : kDesk) {
        const GroupContext ctx(p, r);
        std::vector<ICochain> gens;
        for (int i = 1; i <= r; ++i) {
            gens.push_back(f_gen(ctx, i));
            gens.push_back(h_gen(ctx, i));
        }
        for (const auto& a : gens)
            for (const auto& b : gens) {
                if (a.degree() + b.degree() > 3 && ctx.order() > 9) continue;
                EXPECT_TRUE(coboundary_I(cup(a, b)).is_zero());
            }
    }
}

TEST(Permutation, Basics) {
    const Permutation id = Permutation::identity(3);
    const Permutation cyc({1, 2, 0});
    EXPECT_EQ(cyc.sign(), 1);
    EXPECT_EQ(Permutation({1, 0, 2}).sign(), -1);
    EXPECT_EQ(cyc.compose(cyc.inverse()), id);
    EXPECT_EQ(cyc.compose(cyc)(0), 2);
    EXPECT_THROW(Permutation({0, 0, 1}), std::invalid_argument);
}

TEST(SigmaAct, Examples) {
    std::mt19937_64 rng(9);
    const GroupContext ctx(3, 1);
    const ICochain f = random_any<CochainKind::I>(ctx, 2, CoeffRing::ModP, rng);
    EXPECT_EQ(sigma_act(Permutation::identity(2), f), f);
    const ICochain sw = sigma_act(Permutation({1, 0}), f);
    for_each_nonidentity_tuple(ctx, 2, [&](std::span<const GroupElem> u) {
        EXPECT_EQ(sw.value(u), mod_reduce(-f.value({u[1], u[0]}), 3));
    });
    EXPECT_THROW(sigma_act(Permutation::identity(3), f), std::invalid_argument);
}

// With (sigma f)(b) = sgn f(b_{sigma^-1(1)}, ...) and the usual composition,
// applying tau then sigma is the same as acting once by tau o sigma.
TEST(SigmaAct, CompositionRule) {
    std::mt19937_64 rng(10);
    const GroupContext ctx(3, 1);
    std::vector<Permutation> s3;
    std::vector<int> img{0, 1, 2};
    do s3.emplace_back(img);
    while (std::next_permutation(img.begin(), img.end()));
    for (int k = 0; k < 10; ++k) {
        const ICochain f = random_any<CochainKind::I>(ctx, 3, CoeffRing::ModP, rng);
        for (const auto& sigma : s3)
            for (const auto& tau : s3) EXPECT_EQ(sigma_act(sigma, sigma_act(tau, f)), sigma_act(tau.compose(sigma), f));
    }
}

TEST(SigmaAct, EvaluationFormula) {
    std::mt19937_64 rng(11);
    const GroupContext ctx(2, 2);
    const ICochain f = random_any<CochainKind::I>(ctx, 3, CoeffRing::ModP, rng);
    const Permutation sigma({2, 0, 1});
    const Permutation inv = sigma.inverse();
    const ICochain g = sigma_act(sigma, f);
    for_each_nonidentity_tuple(ctx, 3, [&](std::span<const GroupElem> b) {
        const std::vector<GroupElem> moved{b[static_cast<std::size_t>(inv(0))], b[static_cast<std::size_t>(inv(1))],
                                           b[static_cast<std::size_t>(inv(2))]};
        EXPECT_EQ(g.value(b), mod_reduce(sigma.sign() * f.value(moved), 2));
    });
}
