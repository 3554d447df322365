#ifndef SPINMIRROR_ERROR_HPP
#define SPINMIRROR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace spinmirror {

// Failure categories surfaced by the library. The CLI maps these to exit
// codes (usage/validation -> 2, numerical -> 3, I/O -> 4).
enum class Errc {
  InvalidSpec,
  UnsupportedNormalization,
  NumericalFailure,
  DegenerateInput,
  NotMirrorSymmetric,
  InternalInconsistency,
  InvalidSite,
  InvalidAmplitude,
  InvalidArgs,
  Io,
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidSpec: return "invalid-spec";
    case Errc::UnsupportedNormalization: return "unsupported-normalization";
    case Errc::NumericalFailure: return "numerical-failure";
    case Errc::DegenerateInput: return "degenerate-input";
    case Errc::NotMirrorSymmetric: return "not-mirror-symmetric";
    case Errc::InternalInconsistency: return "internal-inconsistency";
    case Errc::InvalidSite: return "invalid-site";
    case Errc::InvalidAmplitude: return "invalid-amplitude";
    case Errc::InvalidArgs: return "invalid-args";
    case Errc::Io: return "io-failure";
  }
  return "unknown";
}

}  // namespace spinmirror

#endif
