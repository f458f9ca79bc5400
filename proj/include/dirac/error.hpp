#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dirac {

enum class ErrorKind {
  Singular,
  DegenerateLimit,
  NotUnitary,
  ClassificationAmbiguous,
  OnSpectrum,
  AtThreshold,
  PoleAtMinusM,
  InGap,
  OriginEvaluation,
  DiagonalPoint,
  NearEigenvalue,
  NearSingular,
  DegenerateQuadratic,
  NonClosure,
  OriginOrThreshold,
  InvalidArgument,
  ParseError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::DegenerateLimit: return "DegenerateLimit";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::ClassificationAmbiguous: return "ClassificationAmbiguous";
    case ErrorKind::OnSpectrum: return "OnSpectrum";
    case ErrorKind::AtThreshold: return "AtThreshold";
    case ErrorKind::PoleAtMinusM: return "PoleAtMinusM";
    case ErrorKind::InGap: return "InGap";
    case ErrorKind::OriginEvaluation: return "OriginEvaluation";
    case ErrorKind::DiagonalPoint: return "DiagonalPoint";
    case ErrorKind::NearEigenvalue: return "NearEigenvalue";
    case ErrorKind::NearSingular: return "NearSingular";
    case ErrorKind::DegenerateQuadratic: return "DegenerateQuadratic";
    case ErrorKind::NonClosure: return "NonClosure";
    case ErrorKind::OriginOrThreshold: return "OriginOrThreshold";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dirac
