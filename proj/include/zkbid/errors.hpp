#pragma once

#include <stdexcept>
#include <string>

namespace zkbid {

struct Error : std::runtime_error {
    explicit Error(const std::string& m) : std::runtime_error(m) {}
};

struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// crypto primitives
struct AbortedHashToPoint : Error { using Error::Error; };

// face match
struct ZeroNormVector : Error { using Error::Error; };

// witness synthesis
struct SimilarityBelowThreshold : Error { using Error::Error; };
struct NormOutOfTolerance : Error { using Error::Error; };
struct UnsatisfiedWitness : Error { using Error::Error; };

// ring signatures
struct KeyMismatch : Error { using Error::Error; };
struct SignerNotInRing : Error { using Error::Error; };

// chain
struct BrokenLinkage : Error { using Error::Error; };
struct StateRootMismatch : Error { using Error::Error; };

// network sim
struct UnknownNode : Error { using Error::Error; };
struct SimTimeout : Error { using Error::Error; };

// wallet
struct FaceMismatch : Error { using Error::Error; };
struct InsufficientAnonymitySet : Error { using Error::Error; };
struct InconsistentRegInfo : Error { using Error::Error; };
struct NotEnrolled : Error { using Error::Error; };

}  // namespace zkbid
