#pragma once

#include <stdexcept>
#include <string>

namespace s2t {

enum class ErrorCode
{
  config,        // malformed or unsupported group configuration
  parse,         // malformed word literal
  precondition,  // operation called outside its contract
  hypothesis,    // level construction rejected (standing hypotheses fail)
  io,
  internal       // an invariant the construction guarantees was broken
};

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string& what)
    : std::runtime_error(what), code_(code)
  {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace s2t
