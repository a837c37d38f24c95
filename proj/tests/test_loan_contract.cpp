// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <doctest.h>

#include "loan/loan_contract.h"
#include "primitives/rng.h"

using namespace atomicloans;

namespace {

// Standard desk-scale loan: 10000 principal, 500 interest, 500 fee,
// 6000/9000 collateral, windows at 1000/2000/3000/3500/4000.
struct Loan {
    const SignatureScheme& scheme = scheme_for(SigSchemeKind::Transparent);
    DeterministicRng rng{41};
    KeyPair alice = scheme.keygen(rng);
    KeyPair bob = scheme.keygen(rng);
    KeyPair charlie = scheme.keygen(rng);
    KeyPair rival = scheme.keygen(rng);
    Secret a1 = rng.next_secret();
    Secret a2 = rng.next_secret();
    Secret b1 = rng.next_secret();
    Secret b2 = rng.next_secret();
    Secret c = rng.next_secret();
    Secret c_rival = rng.next_secret();

    ContractChain chain{"BCoin"};
    LoanContract contract;

    Loan()
        : contract(make_terms(), PartyId::alice(), PartyId::bob(), alice.pub, bob.pub) {
        chain.mint(PartyId::alice(), 2000);
        chain.mint(PartyId::bob(), 10000);
        chain.mint(PartyId::charlie(), 20000);
        chain.mint(PartyId::other(1), 11000);
        OutPoint seiz, refd;
        seiz.txid[0] = 0x5e;
        refd.txid[0] = 0x4f;
        refd.vout = 1;
        contract.record_collateral(seiz, refd);
    }

    LoanTerms make_terms() {
        LoanTerms t;
        t.principal = 10000;
        t.interest = 500;
        t.liquidation_fee = 500;
        t.bid_settlement_deadline = Timestamp{3500};
        t.collateral.alice = alice.pub;
        t.collateral.bob = bob.pub;
        t.collateral.h_a1 = commit(a1);
        t.collateral.h_a2 = commit(a2);
        t.collateral.h_b1 = commit(b1);
        t.collateral.h_b2 = commit(b2);
        t.collateral.timeline = {Timestamp{1000}, Timestamp{2000}, Timestamp{3000},
                                 Timestamp{4000}};
        t.collateral.seizable_value = 6000;
        t.collateral.refundable_value = 9000;
        return t;
    }

    Bid bid_from(const KeyPair& kp, PartyId who, Amount amount, const Secret& secret) {
        return Bid{who, amount, commit(secret), who, kp.pub};
    }

    void to_funded() { REQUIRE(contract.fund(chain, PartyId::bob(), 10000).is_ok()); }
    void to_withdrawn() {
        to_funded();
        REQUIRE(contract.withdraw(chain, PartyId::alice(), a1, b1, Timestamp{100}).is_ok());
    }
    void to_bidding() {
        to_withdrawn();
        REQUIRE(contract.start_bidding(PartyId::bob(), Timestamp{2000}).is_ok());
    }
    void to_closed_with_bid(Amount amount) {
        to_bidding();
        REQUIRE(contract
                    .place_bid(chain, bid_from(charlie, PartyId::charlie(), amount, c),
                               Timestamp{2200})
                    .is_ok());
        REQUIRE(contract.close_bidding(Timestamp{3000}).is_ok());
    }
    void provide_both_signatures() {
        auto payload = contract.settlement_payload();
        REQUIRE(contract
                    .provide_signature(PartyId::alice(), scheme.sign(alice, payload), scheme)
                    .is_ok());
        REQUIRE(contract.provide_signature(PartyId::bob(), scheme.sign(bob, payload), scheme)
                    .is_ok());
    }
    void to_settled(Amount amount) {
        to_closed_with_bid(amount);
        provide_both_signatures();
        REQUIRE(contract.reveal_secret_c(chain, PartyId::charlie(), c).is_ok());
        REQUIRE(contract
                    .reveal_settlement_secret(chain, PartyId::alice(), SettlementWhich::A2, a2)
                    .is_ok());
        REQUIRE(contract
                    .reveal_settlement_secret(chain, PartyId::bob(), SettlementWhich::B2, b2)
                    .is_ok());
        REQUIRE(contract.state() == LoanState::Settled);
    }
};

}  // namespace

TEST_CASE("funding fixes the principal exactly once") {
    Loan l;
    auto wrong = l.contract.fund(l.chain, PartyId::bob(), 9999);
    REQUIRE_FALSE(wrong.is_ok());
    CHECK(wrong.error().code == Err::WrongAmount);

    REQUIRE(l.contract.fund(l.chain, PartyId::bob(), 10000).is_ok());
    CHECK(l.contract.state() == LoanState::Funded);
    CHECK(l.chain.escrow_balance(kPrincipalKey) == 10000);

    auto again = l.contract.fund(l.chain, PartyId::bob(), 10000);
    REQUIRE_FALSE(again.is_ok());
    CHECK(again.error().code == Err::InvalidState);

    auto stranger = Loan();
    CHECK(stranger.contract.fund(stranger.chain, PartyId::alice(), 10000).error().code ==
          Err::Unauthorized);
}

TEST_CASE("withdrawal needs both secrets inside the window") {
    Loan l;
    l.to_funded();

    auto bad = l.contract.withdraw(l.chain, PartyId::alice(), l.a1, l.b2, Timestamp{100});
    REQUIRE_FALSE(bad.is_ok());
    CHECK(bad.error().code == Err::BadPreimage);
    CHECK(l.contract.state() == LoanState::Funded);

    // The window is exclusive at the deadline.
    auto late = l.contract.withdraw(l.chain, PartyId::alice(), l.a1, l.b1, Timestamp{1000});
    REQUIRE_FALSE(late.is_ok());
    CHECK(late.error().code == Err::TooLate);

    REQUIRE(l.contract.withdraw(l.chain, PartyId::alice(), l.a1, l.b1, Timestamp{999}).is_ok());
    CHECK(l.contract.state() == LoanState::Withdrawn);
    CHECK(l.chain.balance_of(PartyId::alice()) == 12000);
    CHECK(l.chain.scan_revealed().count(l.a1) == 1);
    CHECK(l.chain.scan_revealed().count(l.b1) == 1);
}

TEST_CASE("unclaimed principal returns to the lender and reveals B2") {
    Loan l;
    l.to_funded();

    auto early = l.contract.refund_principal(l.chain, PartyId::bob(), l.b2, Timestamp{999});
    REQUIRE_FALSE(early.is_ok());
    CHECK(early.error().code == Err::TooEarly);

    auto badpre = l.contract.refund_principal(l.chain, PartyId::bob(), l.b1, Timestamp{1000});
    REQUIRE_FALSE(badpre.is_ok());
    CHECK(badpre.error().code == Err::BadPreimage);

    REQUIRE(l.contract.refund_principal(l.chain, PartyId::bob(), l.b2, Timestamp{1000}).is_ok());
    CHECK(l.contract.state() == LoanState::PrincipalRefunded);
    CHECK(l.chain.balance_of(PartyId::bob()) == 10000);
    CHECK(l.chain.scan_revealed().count(l.b2) == 1);
}

TEST_CASE("refund after withdrawal is impossible") {
    Loan l;
    l.to_withdrawn();
    auto r = l.contract.refund_principal(l.chain, PartyId::bob(), l.b2, Timestamp{1500});
    REQUIRE_FALSE(r.is_ok());
    CHECK(r.error().code == Err::InvalidState);
}

TEST_CASE("repayment is exact and closes before expiry") {
    Loan l;
    l.to_withdrawn();

    auto short_pay = l.contract.repay(l.chain, PartyId::alice(), 10000, Timestamp{1500});
    REQUIRE_FALSE(short_pay.is_ok());
    CHECK(short_pay.error().code == Err::WrongAmount);

    auto at_expiry = l.contract.repay(l.chain, PartyId::alice(), 10500, Timestamp{2000});
    REQUIRE_FALSE(at_expiry.is_ok());
    CHECK(at_expiry.error().code == Err::TooLate);

    REQUIRE(l.contract.repay(l.chain, PartyId::alice(), 10500, Timestamp{1999}).is_ok());
    CHECK(l.contract.state() == LoanState::Repaid);
    CHECK(l.chain.escrow_balance(kRepaymentKey) == 10500);

    SUBCASE("acceptance credits the lender and reveals B2") {
        REQUIRE(l.contract.accept_repayment(l.chain, PartyId::bob(), l.b2).is_ok());
        CHECK(l.contract.state() == LoanState::Closed);
        CHECK(l.chain.balance_of(PartyId::bob()) == 10500);
        CHECK(l.chain.scan_revealed().count(l.b2) == 1);
        CHECK_FALSE(l.contract.accept_repayment(l.chain, PartyId::bob(), l.b2).is_ok());
    }
    SUBCASE("ignored repayment flows back after bidding_end") {
        auto early = l.contract.refund_repayment(l.chain, PartyId::alice(), Timestamp{2999});
        REQUIRE_FALSE(early.is_ok());
        CHECK(early.error().code == Err::TooEarly);
        REQUIRE(
            l.contract.refund_repayment(l.chain, PartyId::alice(), Timestamp{3000}).is_ok());
        CHECK(l.contract.state() == LoanState::SeizureFallback);
        CHECK(l.chain.escrow_balance(kRepaymentKey) == 0);
    }
}

TEST_CASE("acceptance without a repayment is rejected") {
    Loan l;
    l.to_withdrawn();
    CHECK(l.contract.accept_repayment(l.chain, PartyId::bob(), l.b2).error().code ==
          Err::InvalidState);
}

TEST_CASE("repayment blocks bidding") {
    Loan l;
    l.to_withdrawn();
    REQUIRE(l.contract.repay(l.chain, PartyId::alice(), 10500, Timestamp{1500}).is_ok());
    auto r = l.contract.start_bidding(PartyId::bob(), Timestamp{2000});
    REQUIRE_FALSE(r.is_ok());
    CHECK(r.error().code == Err::InvalidState);
}

TEST_CASE("bidding opens on default, for loan parties only") {
    Loan l;
    l.to_withdrawn();
    auto early = l.contract.start_bidding(PartyId::bob(), Timestamp{1999});
    REQUIRE_FALSE(early.is_ok());
    CHECK(early.error().code == Err::TooEarly);

    auto outsider = l.contract.start_bidding(PartyId::charlie(), Timestamp{2000});
    REQUIRE_FALSE(outsider.is_ok());
    CHECK(outsider.error().code == Err::Unauthorized);

    REQUIRE(l.contract.start_bidding(PartyId::bob(), Timestamp{2000}).is_ok());
    CHECK(l.contract.state() == LoanState::BiddingOpen);
}

TEST_CASE("outbidding refunds the displaced stake in full") {
    Loan l;
    l.to_bidding();
    Bid r1 = l.bid_from(l.rival, PartyId::other(1), 11000, l.c_rival);
    REQUIRE(l.contract.place_bid(l.chain, r1, Timestamp{2100}).is_ok());
    CHECK(l.chain.escrow_balance(kBidKey) == 11000);
    CHECK(l.chain.balance_of(PartyId::other(1)) == 0);

    Bid tie = l.bid_from(l.charlie, PartyId::charlie(), 11000, l.c);
    auto rt = l.contract.place_bid(l.chain, tie, Timestamp{2150});
    REQUIRE_FALSE(rt.is_ok());
    CHECK(rt.error().code == Err::BidTooLow);

    Bid c1 = l.bid_from(l.charlie, PartyId::charlie(), 12000, l.c);
    REQUIRE(l.contract.place_bid(l.chain, c1, Timestamp{2200}).is_ok());
    CHECK(l.chain.escrow_balance(kBidKey) == 12000);
    CHECK(l.chain.balance_of(PartyId::other(1)) == 11000);
    REQUIRE(l.contract.winning_bid());
    CHECK(l.contract.winning_bid()->bidder == PartyId::charlie());

    Bid late = l.bid_from(l.rival, PartyId::other(1), 13000, l.c_rival);
    auto rl = l.contract.place_bid(l.chain, late, Timestamp{3000});
    REQUIRE_FALSE(rl.is_ok());
    CHECK(rl.error().code == Err::TooLate);
}

TEST_CASE("closing splits on whether anyone bid") {
    Loan l;
    l.to_bidding();
    auto early = l.contract.close_bidding(Timestamp{2999});
    REQUIRE_FALSE(early.is_ok());
    CHECK(early.error().code == Err::TooEarly);

    SUBCASE("no bids fall through to seizure") {
        REQUIRE(l.contract.close_bidding(Timestamp{3000}).is_ok());
        CHECK(l.contract.state() == LoanState::SeizureFallback);
    }
    SUBCASE("a bid holds the book open for settlement") {
        REQUIRE(l.contract
                    .place_bid(l.chain, l.bid_from(l.charlie, PartyId::charlie(), 12000, l.c),
                               Timestamp{2500})
                    .is_ok());
        REQUIRE(l.contract.close_bidding(Timestamp{3000}).is_ok());
        CHECK(l.contract.state() == LoanState::BiddingClosed);
    }
}

TEST_CASE("settlement signatures must cover the sweep payload") {
    Loan l;
    l.to_closed_with_bid(12000);
    auto payload = l.contract.settlement_payload();
    REQUIRE_FALSE(payload.empty());

    auto stranger =
        l.contract.provide_signature(PartyId::charlie(), l.scheme.sign(l.charlie, payload),
                                     l.scheme);
    REQUIRE_FALSE(stranger.is_ok());
    CHECK(stranger.error().code == Err::Unauthorized);

    std::vector<uint8_t> wrong = payload;
    wrong.back() ^= 0x01;
    auto badsig =
        l.contract.provide_signature(PartyId::alice(), l.scheme.sign(l.alice, wrong), l.scheme);
    REQUIRE_FALSE(badsig.is_ok());
    CHECK(badsig.error().code == Err::InvalidSignature);

    l.provide_both_signatures();
    CHECK(l.contract.registry().both_signatures());
}

TEST_CASE("the winner reveals C only after both signatures verify") {
    Loan l;
    l.to_closed_with_bid(12000);
    auto payload = l.contract.settlement_payload();
    REQUIRE(l.contract
                .provide_signature(PartyId::alice(), l.scheme.sign(l.alice, payload), l.scheme)
                .is_ok());

    auto missing = l.contract.reveal_secret_c(l.chain, PartyId::charlie(), l.c);
    REQUIRE_FALSE(missing.is_ok());
    CHECK(missing.error().code == Err::MissingSignatures);

    REQUIRE(l.contract.provide_signature(PartyId::bob(), l.scheme.sign(l.bob, payload), l.scheme)
                .is_ok());

    auto badc = l.contract.reveal_secret_c(l.chain, PartyId::charlie(), l.c_rival);
    REQUIRE_FALSE(badc.is_ok());
    CHECK(badc.error().code == Err::BadPreimage);

    auto wrong_caller = l.contract.reveal_secret_c(l.chain, PartyId::other(1), l.c);
    REQUIRE_FALSE(wrong_caller.is_ok());
    CHECK(wrong_caller.error().code == Err::Unauthorized);

    REQUIRE(l.contract.reveal_secret_c(l.chain, PartyId::charlie(), l.c).is_ok());
    CHECK(l.contract.registry().c.has_value());
}

TEST_CASE("settlement secrets wait for C and then settle") {
    Loan l;
    l.to_closed_with_bid(12000);
    l.provide_both_signatures();

    auto premature =
        l.contract.reveal_settlement_secret(l.chain, PartyId::alice(), SettlementWhich::A2, l.a2);
    REQUIRE_FALSE(premature.is_ok());
    CHECK(premature.error().code == Err::OrderingViolation);

    REQUIRE(l.contract.reveal_secret_c(l.chain, PartyId::charlie(), l.c).is_ok());
    REQUIRE(l.contract
                .reveal_settlement_secret(l.chain, PartyId::alice(), SettlementWhich::A2, l.a2)
                .is_ok());
    CHECK(l.contract.state() == LoanState::BiddingClosed);
    REQUIRE(l.contract
                .reveal_settlement_secret(l.chain, PartyId::bob(), SettlementWhich::B2, l.b2)
                .is_ok());
    CHECK(l.contract.state() == LoanState::Settled);

    auto wrong =
        Loan();  // fresh instance: bad preimage on the A2 slot
    wrong.to_closed_with_bid(12000);
    wrong.provide_both_signatures();
    REQUIRE(wrong.contract.reveal_secret_c(wrong.chain, PartyId::charlie(), wrong.c).is_ok());
    CHECK(wrong.contract
              .reveal_settlement_secret(wrong.chain, PartyId::alice(), SettlementWhich::A2,
                                        wrong.b2)
              .error()
              .code == Err::BadPreimage);
}

TEST_CASE("a scanned counterparty secret completes settlement") {
    Loan l;
    l.to_closed_with_bid(12000);
    l.provide_both_signatures();
    REQUIRE(l.contract.reveal_secret_c(l.chain, PartyId::charlie(), l.c).is_ok());
    REQUIRE(l.contract
                .reveal_settlement_secret(l.chain, PartyId::bob(), SettlementWhich::B2, l.b2)
                .is_ok());

    auto garbage = l.contract.reveal_counterparty_secret(l.chain, PartyId::bob(), l.c_rival);
    REQUIRE_FALSE(garbage.is_ok());
    CHECK(garbage.error().code == Err::BadPreimage);

    // Bob submits the A2 he scanned off the collateral sweep.
    REQUIRE(l.contract.reveal_counterparty_secret(l.chain, PartyId::bob(), l.a2).is_ok());
    CHECK(l.contract.state() == LoanState::Settled);
}

TEST_CASE("proceeds split by the min rule across bid sizes") {
    const Amount owed = 11000;  // 10000 + 500 + 500, computed independently
    for (Amount bid : {Amount{9000}, Amount{10999}, Amount{11000}, Amount{11001}, Amount{12000},
                       Amount{19000}}) {
        Loan l;
        l.to_settled(bid);
        Amount expect_bob = bid < owed ? bid : owed;
        Amount expect_alice = bid - expect_bob;
        CHECK(l.contract.bob_share() == expect_bob);
        CHECK(l.contract.alice_share() == expect_alice);

        Amount bob_before = l.chain.balance_of(PartyId::bob());
        auto rb = l.contract.claim_proceeds(l.chain, PartyId::bob());
        REQUIRE(rb.is_ok());
        CHECK(rb.value() == expect_bob);
        CHECK(l.chain.balance_of(PartyId::bob()) == bob_before + expect_bob);

        auto ra = l.contract.claim_proceeds(l.chain, PartyId::alice());
        REQUIRE(ra.is_ok());
        CHECK(ra.value() == expect_alice);
        CHECK(rb.value() + ra.value() == bid);
        CHECK(l.chain.escrow_balance(kBidKey) == 0);

        CHECK(l.contract.claim_proceeds(l.chain, PartyId::bob()).error().code ==
              Err::AlreadyClaimed);
        CHECK(l.contract.claim_proceeds(l.chain, PartyId::alice()).error().code ==
              Err::AlreadyClaimed);
        CHECK(l.chain.conserved());
    }
}

TEST_CASE("claims exist only in the settled state") {
    Loan l;
    l.to_closed_with_bid(12000);
    CHECK(l.contract.claim_proceeds(l.chain, PartyId::bob()).error().code == Err::InvalidState);
}

TEST_CASE("an unsettled winner reclaims the stake at the deadline") {
    Loan l;
    l.to_closed_with_bid(12000);

    auto early = l.contract.refund_bid(l.chain, PartyId::charlie(), Timestamp{3499});
    REQUIRE_FALSE(early.is_ok());
    CHECK(early.error().code == Err::TooEarly);

    auto stranger = l.contract.refund_bid(l.chain, PartyId::other(1), Timestamp{3500});
    REQUIRE_FALSE(stranger.is_ok());
    CHECK(stranger.error().code == Err::Unauthorized);

    REQUIRE(l.contract.refund_bid(l.chain, PartyId::charlie(), Timestamp{3500}).is_ok());
    CHECK(l.contract.state() == LoanState::SeizureFallback);
    CHECK(l.chain.balance_of(PartyId::charlie()) == 20000);
    CHECK(l.chain.escrow_balance(kBidKey) == 0);
}

TEST_CASE("refunds are impossible once settled") {
    Loan l;
    l.to_settled(12000);
    auto r = l.contract.refund_bid(l.chain, PartyId::charlie(), Timestamp{3500});
    REQUIRE_FALSE(r.is_ok());
    CHECK(r.error().code == Err::InvalidState);
}

TEST_CASE("terms validation rejects degenerate configurations") {
    Loan l;
    LoanTerms t = l.make_terms();
    CHECK(t.validate().is_ok());

    LoanTerms zero = t;
    zero.principal = 0;
    CHECK_FALSE(zero.validate().is_ok());

    LoanTerms bad_sdl = t;
    bad_sdl.bid_settlement_deadline = Timestamp{4100};  // beyond seizure_end
    CHECK_FALSE(bad_sdl.validate().is_ok());

    LoanTerms bad_tl = t;
    bad_tl.collateral.timeline.loan_expiry = Timestamp{900};  // before withdraw deadline
    CHECK_FALSE(bad_tl.validate().is_ok());
}
