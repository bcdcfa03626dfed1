// Error codes shared by the library and the CLI's machine-readable output.
#pragma once

#include <stdexcept>
#include <string>

namespace murkit {

enum class errc {
  invalid_vector,
  non_unit_vector,
  zero_vector,
  invalid_effect,
  invalid_state,
  non_sharp_observable,
  out_of_range,
  invalid_probability,
  label_mismatch,
  biased_unsupported,
  not_rank_one,
  incompatible_pair,
  usage,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_vector: return "invalid_vector";
    case errc::non_unit_vector: return "non_unit_vector";
    case errc::zero_vector: return "zero_vector";
    case errc::invalid_effect: return "invalid_effect";
    case errc::invalid_state: return "invalid_state";
    case errc::non_sharp_observable: return "non_sharp_observable";
    case errc::out_of_range: return "out_of_range";
    case errc::invalid_probability: return "invalid_probability";
    case errc::label_mismatch: return "label_mismatch";
    case errc::biased_unsupported: return "biased_unsupported";
    case errc::not_rank_one: return "not_rank_one";
    case errc::incompatible_pair: return "incompatible_pair";
    case errc::usage: return "usage";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace murkit
