#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace schurkit {

/// Error categories used across the toolkit. Every thrown `error` carries one,
/// so callers (and the CLI) can distinguish usage problems from resource limits
/// and from internal consistency failures.
enum class errc {
    invalid_spec,
    too_large,
    invalid_input,
    invalid_multiplier,
    not_a_section,
    missing_identity_class,
    not_inverse_closed,
    not_multiplicatively_closed,
    quotient_mismatch,
    incompatible_section,
    not_well_defined,
    out_of_range,
    no_witness_found,
    undefined_radical,
    invalid_connection_set,
    budget_exhausted,
    internal_invariant_failure,
    non_automorphism,
    io_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::invalid_spec: return "invalid-spec";
        case errc::too_large: return "too-large";
        case errc::invalid_input: return "invalid-input";
        case errc::invalid_multiplier: return "invalid-multiplier";
        case errc::not_a_section: return "not-an-A-section";
        case errc::missing_identity_class: return "missing-identity-class";
        case errc::not_inverse_closed: return "not-inverse-closed";
        case errc::not_multiplicatively_closed: return "not-multiplicatively-closed";
        case errc::quotient_mismatch: return "quotient-mismatch";
        case errc::incompatible_section: return "incompatible-section";
        case errc::not_well_defined: return "not-well-defined";
        case errc::out_of_range: return "out-of-range";
        case errc::no_witness_found: return "no-witness-found";
        case errc::undefined_radical: return "undefined-radical";
        case errc::invalid_connection_set: return "invalid-connection-set";
        case errc::budget_exhausted: return "budget-exhausted";
        case errc::internal_invariant_failure: return "internal-invariant-failure";
        case errc::non_automorphism: return "non-automorphism";
        case errc::io_error: return "io-error";
    }
    return "unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
    if (!ok) fail(code, what);
}

/// Fixed 192-bit set, wide enough for every group this toolkit handles.
/// Element indices double as bit positions.
struct ElemSet {
    std::uint64_t w[3] = {0, 0, 0};

    static ElemSet none() { return {}; }
    static ElemSet all(int n) {
        ElemSet s;
        for (int i = 0; i < n; ++i) s.set(i);
        return s;
    }

    void set(int i) { w[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(int i) { w[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    bool empty() const { return (w[0] | w[1] | w[2]) == 0; }
    int count() const {
        return __builtin_popcountll(w[0]) + __builtin_popcountll(w[1]) + __builtin_popcountll(w[2]);
    }
    int lowest() const {  // -1 when empty
        for (int k = 0; k < 3; ++k)
            if (w[k]) return 64 * k + __builtin_ctzll(w[k]);
        return -1;
    }
    ElemSet& operator|=(const ElemSet& o) {
        w[0] |= o.w[0]; w[1] |= o.w[1]; w[2] |= o.w[2];
        return *this;
    }
    ElemSet& operator&=(const ElemSet& o) {
        w[0] &= o.w[0]; w[1] &= o.w[1]; w[2] &= o.w[2];
        return *this;
    }
    friend ElemSet operator&(ElemSet a, const ElemSet& b) { return a &= b; }
    friend ElemSet operator|(ElemSet a, const ElemSet& b) { return a |= b; }
    friend bool operator==(const ElemSet& a, const ElemSet& b) {
        return a.w[0] == b.w[0] && a.w[1] == b.w[1] && a.w[2] == b.w[2];
    }
    bool intersects(const ElemSet& o) const {
        return (w[0] & o.w[0]) | (w[1] & o.w[1]) | (w[2] & o.w[2]);
    }
    template <class F>
    void for_each(F f) const {
        for (int k = 0; k < 3; ++k) {
            std::uint64_t m = w[k];
            while (m) {
                int i = 64 * k + __builtin_ctzll(m);
                m &= m - 1;
                f(i);
            }
        }
    }
};

inline long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

inline std::vector<int> divisors(int n) {
    std::vector<int> out;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; (long long)d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Smallest primitive root mod an odd prime p.
inline int primitive_root(int p) {
    auto order_mod = [p](int a) {
        int v = a % p, k = 1;
        while (v != 1) { v = (int)((long long)v * a % p); ++k; }
        return k;
    };
    for (int a = 2; a < p; ++a)
        if (order_mod(a) == p - 1) return a;
    fail(errc::invalid_input, "no primitive root; modulus not an odd prime?");
}

}  // namespace schurkit
