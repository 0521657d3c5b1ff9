#pragma once

#include <stdexcept>
#include <string>

namespace g2uds {

enum class Err {
    NotPrime,
    BadShape,
    DivisionByZero,
    NotASquare,
    SingularCurve,
    DegenerateImage,
    CurveMismatch,
    TorsionNotRational,
    Timeout,
    NotTorsion,
    NotMaximalIsotropic,
    TrivialKernel,
    NotIsotropic,
    NotOrder4,
    PointNotOnDomain,
    UnsupportedKernel,
    BrokenChain,
    BadOrder,
    WalkStuck,
    SignatureInvalid,
    SignatureActuallyValid,
    OutOfOrder,
    MalformedResponse,
    TranscriptDesync,
    IllegalQuery,
    TooLarge,
    NotFound,
    BadMagic,
    BadChecksum,
    KindMismatch,
    TruncatedPayload,
    IOError,
    InternalError,
};

class Error : public std::runtime_error {
  public:
    Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Err code() const { return code_; }

  private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

} // namespace g2uds
