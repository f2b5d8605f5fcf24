#pragma once

#include <stdexcept>
#include <string>

namespace dav {

// Every failure the library reports deliberately is an Error with a stable
// code; the CLI maps codes to exit statuses (input errors -> 2, exceeded
// caps -> 3).  Anything else escaping is a bug.
enum class Errc {
    NotClosed,          // Cayley table entry out of range
    NoIdentity,         // no two-sided identity in table
    NotAssociative,     // associativity check failed
    NoInverse,          // some element has no inverse
    BadParameter,       // constructor parameter out of domain
    ParseError,         // group spec / sequence / file syntax
    UnknownGenerator,   // sequence mentions a name the group lacks
    NotAbelian,         // abelian-only operation on non-abelian group
    NotAutomorphism,    // semidirect action map is not an automorphism
    NotHomomorphism,    // semidirect action is not a homomorphism
    HNotProper,         // subgroup-extension witness: H = G or h in H
    NotFree,            // sequence expected product-one free is not
    UnknownRegistryId,  // no fixture for the requested id
    DataCorrupt,        // expected-values table malformed
    CapExceeded,        // work or size cap exceeded
    IoError,            // file not readable/writable
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace dav
