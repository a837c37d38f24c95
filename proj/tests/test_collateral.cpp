// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <doctest.h>

#include "loan/collateral.h"
#include "primitives/rng.h"

using namespace atomicloans;

namespace {

struct Setup {
    const SignatureScheme& scheme = scheme_for(SigSchemeKind::Transparent);
    DeterministicRng rng{31};
    KeyPair alice = scheme.keygen(rng);
    KeyPair bob = scheme.keygen(rng);
    Secret a1 = rng.next_secret();
    Secret a2 = rng.next_secret();
    Secret b1 = rng.next_secret();
    Secret b2 = rng.next_secret();
    CollateralParams params;

    Setup() {
        params.alice = alice.pub;
        params.bob = bob.pub;
        params.h_a1 = commit(a1);
        params.h_a2 = commit(a2);
        params.h_b1 = commit(b1);
        params.h_b2 = commit(b2);
        params.timeline = {Timestamp{1000}, Timestamp{2000}, Timestamp{3000}, Timestamp{4000}};
        params.seizable_value = 6000;
        params.refundable_value = 9000;
    }
};

}  // namespace

TEST_CASE("periods partition the clock") {
    Setup s;
    const PeriodTimeline& tl = s.params.timeline;
    CHECK(tl.valid());
    CHECK(tl.period_at(Timestamp{0}) == Period::Loan);
    CHECK(tl.period_at(Timestamp{1999}) == Period::Loan);
    CHECK(tl.period_at(Timestamp{2000}) == Period::Bidding);
    CHECK(tl.period_at(Timestamp{2999}) == Period::Bidding);
    CHECK(tl.period_at(Timestamp{3000}) == Period::Seizure);
    CHECK(tl.period_at(Timestamp{3999}) == Period::Seizure);
    CHECK(tl.period_at(Timestamp{4000}) == Period::Refund);
    CHECK(std::string(period_name(Period::Seizure)) == "seizure");
}

TEST_CASE("branch placement differs between the vaults") {
    Setup s;
    CHECK_THROWS_AS(branch_condition(s.params, VaultKind::Refundable, Branch::Seizure),
                    std::invalid_argument);
    CHECK_THROWS_AS(branch_condition(s.params, VaultKind::Seizable, Branch::Reclaim),
                    std::invalid_argument);
    CHECK(branch_condition(s.params, VaultKind::Seizable, Branch::Repayment) ==
          branch_condition(s.params, VaultKind::Refundable, Branch::Repayment));
    CHECK(branch_condition(s.params, VaultKind::Seizable, Branch::Liquidation) ==
          branch_condition(s.params, VaultKind::Refundable, Branch::Liquidation));
}

TEST_CASE("seizure and reclaim live exactly inside the seizure period") {
    Setup s;
    ScriptCondition seize = branch_condition(s.params, VaultKind::Seizable, Branch::Seizure);
    ScriptCondition reclaim = branch_condition(s.params, VaultKind::Refundable, Branch::Reclaim);
    ScriptCondition last = branch_condition(s.params, VaultKind::Seizable, Branch::LastResort);
    for (uint64_t t = 0; t <= 5000; t += 50) {
        bool in_window = t >= 3000 && t < 4000;
        CHECK(time_live(seize, Timestamp{t}) == in_window);
        CHECK(time_live(reclaim, Timestamp{t}) == in_window);
        CHECK(time_live(last, Timestamp{t}) == (t >= 4000));
    }
    // Boundary instants, one second precision.
    CHECK_FALSE(time_live(seize, Timestamp{2999}));
    CHECK(time_live(seize, Timestamp{3000}));
    CHECK(time_live(seize, Timestamp{3999}));
    CHECK_FALSE(time_live(seize, Timestamp{4000}));
}

TEST_CASE("some branch of each vault is live at every instant") {
    Setup s;
    ScriptCondition seiz = seizable_script(s.params);
    ScriptCondition refd = refundable_script(s.params);
    for (uint64_t t = 0; t <= 6000; t += 25) {
        CHECK(time_live(seiz, Timestamp{t}));
        CHECK(time_live(refd, Timestamp{t}));
    }
}

TEST_CASE("repayment branch needs both lender secrets plus the borrower key") {
    Setup s;
    ScriptCondition c = branch_condition(s.params, VaultKind::Seizable, Branch::Repayment);
    std::vector<uint8_t> msg = {'m'};
    SpendContext ctx{Timestamp{500}, msg, &s.scheme};
    Signature sig = s.scheme.sign(s.alice, msg);
    CHECK(eval_condition(c, Witness{{s.b1, s.b2}, {{s.alice.pub, sig}}}, ctx));
    CHECK_FALSE(eval_condition(c, Witness{{s.b1}, {{s.alice.pub, sig}}}, ctx));
    CHECK_FALSE(eval_condition(c, Witness{{s.b1, s.b2}, {}}, ctx));
    Signature bob_sig = s.scheme.sign(s.bob, msg);
    CHECK_FALSE(eval_condition(c, Witness{{s.b1, s.b2}, {{s.bob.pub, bob_sig}}}, ctx));
}

TEST_CASE("seizure branch needs the withdrawal proof secret inside the window") {
    Setup s;
    ScriptCondition c = branch_condition(s.params, VaultKind::Seizable, Branch::Seizure);
    std::vector<uint8_t> msg = {'m'};
    Signature sig = s.scheme.sign(s.bob, msg);
    Witness with_a1{{s.a1}, {{s.bob.pub, sig}}};
    Witness without{{}, {{s.bob.pub, sig}}};
    CHECK(eval_condition(c, with_a1, SpendContext{Timestamp{3100}, msg, &s.scheme}));
    CHECK_FALSE(eval_condition(c, without, SpendContext{Timestamp{3100}, msg, &s.scheme}));
    CHECK_FALSE(eval_condition(c, with_a1, SpendContext{Timestamp{2900}, msg, &s.scheme}));
    CHECK_FALSE(eval_condition(c, with_a1, SpendContext{Timestamp{4000}, msg, &s.scheme}));
}

TEST_CASE("liquidation branch needs both settlement secrets and both keys") {
    Setup s;
    ScriptCondition c = branch_condition(s.params, VaultKind::Refundable, Branch::Liquidation);
    std::vector<uint8_t> msg = {'m'};
    Signature sa = s.scheme.sign(s.alice, msg);
    Signature sb = s.scheme.sign(s.bob, msg);
    SpendContext ctx{Timestamp{3100}, msg, &s.scheme};
    CHECK(eval_condition(c, Witness{{s.a2, s.b2}, {{s.alice.pub, sa}, {s.bob.pub, sb}}}, ctx));
    CHECK_FALSE(eval_condition(c, Witness{{s.a2}, {{s.alice.pub, sa}, {s.bob.pub, sb}}}, ctx));
    CHECK_FALSE(eval_condition(c, Witness{{s.a2, s.b2}, {{s.alice.pub, sa}}}, ctx));
}

TEST_CASE("lock_collateral splits funding into the two vaults plus change") {
    Setup s;
    UtxoChain chain{"ACoin"};
    OutPoint fund = chain.add_genesis(15500, PartyId::alice(), s.alice.pub);
    OutPoint ops[1] = {fund};
    auto locked = lock_collateral(chain, Timestamp{10}, s.scheme, s.alice, PartyId::alice(),
                                  std::span<const OutPoint>(ops, 1), s.params);
    REQUIRE(locked.is_ok());
    const LockedCollateral& lc = locked.value();

    const TxOut* seiz = chain.find(lc.seizable);
    const TxOut* refd = chain.find(lc.refundable);
    REQUIRE(seiz);
    REQUIRE(refd);
    CHECK(seiz->value == 6000);
    CHECK(refd->value == 9000);
    CHECK_FALSE(seiz->owner.has_value());
    CHECK(seiz->cond == seizable_script(s.params));
    CHECK(refd->cond == refundable_script(s.params));
    REQUIRE(lc.change.has_value());
    CHECK(chain.find(*lc.change)->value == 500);
    CHECK(chain.balance_of(PartyId::alice()) == 500);
    CHECK(chain.total_value() == 15500);
}

TEST_CASE("lock_collateral rejects short funding and bad parameters") {
    Setup s;
    UtxoChain chain{"ACoin"};
    OutPoint fund = chain.add_genesis(14999, PartyId::alice(), s.alice.pub);
    OutPoint ops[1] = {fund};
    auto r = lock_collateral(chain, Timestamp{10}, s.scheme, s.alice, PartyId::alice(),
                             std::span<const OutPoint>(ops, 1), s.params);
    REQUIRE_FALSE(r.is_ok());
    CHECK(r.error().code == Err::InsufficientBalance);

    CollateralParams zero = s.params;
    zero.seizable_value = 0;
    auto r2 = lock_collateral(chain, Timestamp{10}, s.scheme, s.alice, PartyId::alice(),
                              std::span<const OutPoint>(ops, 1), zero);
    REQUIRE_FALSE(r2.is_ok());
    CHECK(r2.error().code == Err::WrongAmount);
}
