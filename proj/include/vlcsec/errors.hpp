#pragma once

#include <stdexcept>
#include <string>

namespace vlcsec {

// Base for every error the library raises. The CLI maps ConfigError to exit
// code 2 and everything else to 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: parse failures, invariant violations in scenarios/configs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Coincident nodes and similar geometry that makes a gain undefined.
class GeometryError : public Error {
 public:
  using Error::Error;
};

class RankDeficientError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// A beamformer that does not null the channel its rate formula assumes nulled.
class NullingError : public Error {
 public:
  using Error::Error;
};

// Not enough relays, or a projection that annihilates the steering vector.
class DegenerateBeamformerError : public Error {
 public:
  using Error::Error;
};

}  // namespace vlcsec
