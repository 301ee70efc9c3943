#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fpme {

// Precondition violated by an argument (bad alpha, r = 1, pole input, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class PoleError : public DomainError {
 public:
  explicit PoleError(double x);
  double where() const noexcept { return x_; }

 private:
  double x_;
};

// A numerical procedure could not reach the requested tolerance.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

// Time stepping produced a non-finite value.
class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(const std::string& what, std::size_t layer)
      : std::runtime_error(what), layer_(layer) {}
  std::size_t layer() const noexcept { return layer_; }

 private:
  std::size_t layer_;
};

class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// The input leaves the closed class an exact routine can handle.
class UnsupportedFormError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace fpme
