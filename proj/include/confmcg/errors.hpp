#pragma once

#include <stdexcept>
#include <string>

namespace confmcg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RankMismatch : Error {
  using Error::Error;
};

struct IndexOutOfRange : Error {
  using Error::Error;
};

struct DegreeOutOfRange : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& msg, int line_no)
      : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg), line(line_no) {}
  int line;
};

struct NotInvertible : Error {
  using Error::Error;
};

struct BoundaryNotFixed : Error {
  BoundaryNotFixed(const std::string& msg, std::string image)
      : Error(msg), image_word(std::move(image)) {}
  std::string image_word;
};

struct NotSymplectic : Error {
  using Error::Error;
};

struct GenusMismatch : Error {
  using Error::Error;
};

struct NotFoundWithinBound : Error {
  NotFoundWithinBound(const std::string& msg, int bound) : Error(msg), bound(bound) {}
  int bound;
};

struct TauUndefined : Error {
  using Error::Error;
};

struct CertificateMissing : Error {
  using Error::Error;
};

/// Internal consistency failure: something the algebra guarantees did not hold.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace confmcg
