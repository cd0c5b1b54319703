#pragma once

#include <stdexcept>
#include <string>

namespace qdslab {

/// Base class for all qdslab errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A Cayley table is not a group table (Latin square, identity,
/// two-sided inverses or associativity failed).
struct NonGroupTable : Error { using Error::Error; };

/// Requested group or structure exceeds the configured order cap.
struct OrderCapExceeded : Error { using Error::Error; };

/// Element index outside 0..order-1 or residue out of range.
struct ElementOutOfRange : Error { using Error::Error; };

/// Operation requires a cyclic group C_n.
struct NotCyclic : Error { using Error::Error; };

/// Operation requires an abelian group.
struct NotAbelian : Error { using Error::Error; };

/// Operation requires a quasi difference set.
struct NotAQds : Error { using Error::Error; };

/// An exhaustive search or enumeration ran past its step budget.
struct SearchCapExceeded : Error { using Error::Error; };

/// The set defining an incidence structure is empty.
struct EmptyDelta : Error { using Error::Error; };

/// Two identical lines (or points) were passed where distinct ones are required.
struct DuplicateLine : Error { using Error::Error; };

/// Operation requires a partial linear space.
struct NotPls : Error { using Error::Error; };

/// Structure carries no group/set provenance.
struct NoProvenance : Error { using Error::Error; };

/// Provenance does not have the shape the operation needs
/// (e.g. not a power of a single base structure).
struct BadProvenance : Error { using Error::Error; };

/// Coordinate selection is inconsistent with the provenance group.
struct BadCoordinates : Error { using Error::Error; };

/// Lines cannot be identified with group labels (repeated cosets).
struct LabelMapUnavailable : Error { using Error::Error; };

/// The supplied map is not an automorphism of the group.
struct NotGroupAutomorphism : Error { using Error::Error; };

/// Unknown export format name.
struct UnknownFormat : Error { using Error::Error; };

/// Malformed structure description or report input.
struct ParseError : Error { using Error::Error; };

}  // namespace qdslab
