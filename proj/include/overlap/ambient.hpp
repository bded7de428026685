#ifndef OVERLAP_AMBIENT_HPP
#define OVERLAP_AMBIENT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace overlap {

// Exact integer coefficients.  Jacobi cascades multiply term counts, not
// magnitudes, but overflow must be impossible by construction.
using Int = boost::multiprecision::cpp_int;

// User-facing input problems (bad syntax, invalid element): CLI exit 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public InputError {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : InputError(msg + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Broken internal invariants: CLI exit 1.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

// (-1)^e for a possibly negative exponent.
inline int signPow(long long e) { return (e & 1) ? -1 : 1; }

// The triple (d, k, n): spatial dimension, overlap bound, arity.
// Classes live in H_* B_d^(k)(n).  d = 1 is the associative case and is
// rejected at validation; k = 2 is the plain little-discs operad.
struct AmbientContext {
    int d = 2;
    int k = 2;
    int n = 0;

    AmbientContext() = default;
    AmbientContext(int d_, int k_, int n_) : d(d_), k(k_), n(n_) { validate(); }

    void validate() const {
        if (d < 2)
            throw InputError("ambient dimension d must be >= 2 (d = " + std::to_string(d) +
                             "; the d = 1 associative case is out of scope)");
        if (k < 2)
            throw InputError("overlap bound k must be >= 2 (k = " + std::to_string(k) + ")");
        if (n < 0)
            throw InputError("arity n must be >= 0 (n = " + std::to_string(n) + ")");
    }

    friend bool operator==(const AmbientContext&, const AmbientContext&) = default;
};

} // namespace overlap

#endif
