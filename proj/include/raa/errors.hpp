#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace raa {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A point lies outside the region a local frame is valid for.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// Sampling left no admissible room for candidates on a segment.
class EmptyCandidates : public Error {
 public:
  EmptyCandidates(const std::string& segment_id, double usable_length)
      : Error("segment '" + segment_id + "' has no admissible candidates (usable length " +
              std::to_string(usable_length) + " m)"),
        usable_length_(usable_length) {}

  double usable_length() const noexcept { return usable_length_; }

 private:
  double usable_length_;
};

/// Fewer candidates than collected points, so no window exists.
class InsufficientCandidates : public Error {
 public:
  InsufficientCandidates(std::size_t candidates, std::size_t collected)
      : Error("need at least " + std::to_string(collected) + " candidates, have " +
              std::to_string(candidates)),
        candidates_(candidates),
        collected_(collected) {}

  std::size_t candidates() const noexcept { return candidates_; }
  std::size_t collected() const noexcept { return collected_; }

 private:
  std::size_t candidates_;
  std::size_t collected_;
};

/// The normal matrix of a least-squares transform update is singular.
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

/// The solver state became non-finite.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, int iteration)
      : Error(what + " (iteration " + std::to_string(iteration) + ")"), iteration_(iteration) {}

  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

/// Two inputs that must be index-aligned have different shapes.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// A data file is missing, malformed or inconsistent.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace raa
