#pragma once
/* Coefficient fields: the rationals, or a prime field F_p.
 * High-level structures carry Rat coefficients; in F_p mode these are the
 * canonical representatives 0..p-1 and arithmetic is delegated to Field.
 */
#include <cstdint>
#include <stdexcept>
#include <string>

#include "korlov/bigint.hpp"

namespace korlov {

struct FieldMismatchError : std::runtime_error {
    FieldMismatchError() : std::runtime_error("field mismatch between operands") {}
};

class Field {
public:
    enum class Kind { Q, Fp };

    static Field rationals() { return Field(Kind::Q, 0); }
    static Field prime(uint32_t p);
    static Field parse(const std::string& tag);  // "Q" or a prime number

    Kind kind() const { return kind_; }
    uint32_t p() const { return p_; }
    bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Field& o) const { return !(*this == o); }
    std::string to_string() const { return kind_ == Kind::Q ? "Q" : "F" + std::to_string(p_); }

    // canonicalize an arbitrary rational into this field
    Rat reduce(const Rat& x) const;
    Rat add(const Rat& a, const Rat& b) const;
    Rat sub(const Rat& a, const Rat& b) const;
    Rat mul(const Rat& a, const Rat& b) const;
    Rat neg(const Rat& a) const;
    Rat inv(const Rat& a) const;
    bool is_zero(const Rat& a) const { return a.is_zero(); }

    uint32_t to_fp(const Rat& x) const;  // requires Kind::Fp
    uint32_t fp_add(uint32_t a, uint32_t b) const { return a + b >= p_ ? a + b - p_ : a + b; }
    uint32_t fp_sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
    uint32_t fp_mul(uint32_t a, uint32_t b) const { return (uint32_t)((uint64_t)a * b % p_); }
    uint32_t fp_neg(uint32_t a) const { return a ? p_ - a : 0; }
    uint32_t fp_inv(uint32_t a) const;

private:
    Field(Kind k, uint32_t p) : kind_(k), p_(p) {}
    Kind kind_;
    uint32_t p_;
};

}  // namespace korlov
