// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ATOMICLOANS_UTIL_RESULT_H
#define ATOMICLOANS_UTIL_RESULT_H

#include <cassert>
#include <string>
#include <utility>
#include <variant>

namespace atomicloans {

// Rejection reasons for ledger and contract operations. Rejections are
// expected control flow (adversarial attempts are part of every run), so
// they travel as values, never exceptions.
enum class Err {
    UnknownOutput,
    ConditionUnsatisfied,
    ValueMismatch,
    DoubleSpend,
    InvalidState,
    WrongAmount,
    InsufficientBalance,
    TooEarly,
    TooLate,
    BadPreimage,
    Unauthorized,
    InvalidSignature,
    BidTooLow,
    AlreadyClaimed,
    MissingSignatures,
    OrderingViolation,
    BackwardTime,
    InvalidParams,
    DepthExceeded,
    CheatingStrategy,
};

inline const char* err_name(Err e) {
    switch (e) {
        case Err::UnknownOutput: return "unknown-output";
        case Err::ConditionUnsatisfied: return "condition-unsatisfied";
        case Err::ValueMismatch: return "value-mismatch";
        case Err::DoubleSpend: return "double-spend";
        case Err::InvalidState: return "invalid-state";
        case Err::WrongAmount: return "wrong-amount";
        case Err::InsufficientBalance: return "insufficient-balance";
        case Err::TooEarly: return "too-early";
        case Err::TooLate: return "too-late";
        case Err::BadPreimage: return "bad-preimage";
        case Err::Unauthorized: return "unauthorized";
        case Err::InvalidSignature: return "invalid-signature";
        case Err::BidTooLow: return "bid-too-low";
        case Err::AlreadyClaimed: return "already-claimed";
        case Err::MissingSignatures: return "missing-signatures";
        case Err::OrderingViolation: return "ordering-violation";
        case Err::BackwardTime: return "backward-time";
        case Err::InvalidParams: return "invalid-params";
        case Err::DepthExceeded: return "depth-exceeded";
        case Err::CheatingStrategy: return "cheating-strategy";
    }
    return "unknown";
}

struct OpError {
    Err code;
    std::string msg;
};

struct Unit {};

template <typename T = Unit>
class Result {
  public:
    static Result ok(T v = T{}) { return Result(std::move(v)); }
    static Result fail(Err code, std::string msg = "") {
        return Result(OpError{code, std::move(msg)});
    }

    bool is_ok() const { return std::holds_alternative<T>(v_); }
    explicit operator bool() const { return is_ok(); }

    const T& value() const {
        assert(is_ok());
        return std::get<T>(v_);
    }
    T& value() {
        assert(is_ok());
        return std::get<T>(v_);
    }
    const OpError& error() const {
        assert(!is_ok());
        return std::get<OpError>(v_);
    }

  private:
    explicit Result(T v) : v_(std::move(v)) {}
    explicit Result(OpError e) : v_(std::move(e)) {}
    std::variant<T, OpError> v_;
};

}  // namespace atomicloans

#endif  // ATOMICLOANS_UTIL_RESULT_H
