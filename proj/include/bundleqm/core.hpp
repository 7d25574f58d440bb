#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bundleqm {

using cplx = std::complex<double>;

inline constexpr cplx I{0.0, 1.0};
inline constexpr double pi = std::numbers::pi;
inline constexpr double sqrt2 = std::numbers::sqrt2;

enum class ErrorKind {
  InvalidArgument,
  ZeroCrossing,
  Undersampled,
  OpenCurve,
  ZeroPoint,
  GridTooSmall,
  DivisionNearZero,
  WrongPolarization,
  QuadratureUnderResolved,
  DecayViolation,
  ChargeMismatch,
  NonMonotone,
  ResolutionInsufficient,
  NotNormalized,
  BranchOutOfRange,
  OriginSingular,
  ConfigError,
  IoError,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ZeroCrossing: return "ZeroCrossing";
    case ErrorKind::Undersampled: return "Undersampled";
    case ErrorKind::OpenCurve: return "OpenCurve";
    case ErrorKind::ZeroPoint: return "ZeroPoint";
    case ErrorKind::GridTooSmall: return "GridTooSmall";
    case ErrorKind::DivisionNearZero: return "DivisionNearZero";
    case ErrorKind::WrongPolarization: return "WrongPolarization";
    case ErrorKind::QuadratureUnderResolved: return "QuadratureUnderResolved";
    case ErrorKind::DecayViolation: return "DecayViolation";
    case ErrorKind::ChargeMismatch: return "ChargeMismatch";
    case ErrorKind::NonMonotone: return "NonMonotone";
    case ErrorKind::ResolutionInsufficient: return "ResolutionInsufficient";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::BranchOutOfRange: return "BranchOutOfRange";
    case ErrorKind::OriginSingular: return "OriginSingular";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// Library-wide exception; `kind()` identifies the failed precondition.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Fiber winding number q_v. +1 particle, -1 antiparticle, 0 neutral.
struct QuantumCharge {
  int q_v = 1;

  static constexpr QuantumCharge particle() { return {1}; }
  static constexpr QuantumCharge antiparticle() { return {-1}; }

  constexpr QuantumCharge conjugate() const { return {-q_v}; }
  constexpr double sign() const { return static_cast<double>(q_v); }
  constexpr bool operator==(const QuantumCharge&) const = default;
};

inline void require_unit_charge(QuantumCharge charge) {
  if (charge.q_v != 1 && charge.q_v != -1)
    throw Error(ErrorKind::InvalidArgument,
                "charge must be +1 or -1, got " + std::to_string(charge.q_v));
}

/// Sign of the particle frequency. `mathematical` evolves particles with
/// e^{+i w t} so the phase winds with the orbit; `physical` is the textbook
/// e^{-i w t}.
enum class FrequencyConvention { mathematical, physical };

inline double frequency_sign(QuantumCharge charge, FrequencyConvention conv) {
  return conv == FrequencyConvention::mathematical ? charge.sign() : -charge.sign();
}

}  // namespace bundleqm
