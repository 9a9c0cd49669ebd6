#pragma once

#include <stdexcept>
#include <string>

namespace wbspi {

/// Base of every error raised by the model and the verification kit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bus level
class InvalidAddress : public Error { using Error::Error; };
class ProtocolViolation : public Error { using Error::Error; };

// Slave model
class LengthMismatch : public Error { using Error::Error; };

// Verification kit
class UnknownOverrideTarget : public Error { using Error::Error; };
class ElaborationError : public Error { using Error::Error; };
class RunTimeout : public Error { using Error::Error; };
class DriveTimeout : public Error { using Error::Error; };
class OrphanObservation : public Error { using Error::Error; };
class UnknownMutant : public Error { using Error::Error; };

// Waveforms
class TimeRegression : public Error { using Error::Error; };

// Bad user configuration (CLI flags, constraint ranges).
class ConfigError : public Error { using Error::Error; };

}  // namespace wbspi
