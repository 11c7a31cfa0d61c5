#pragma once

#include <optional>
#include <string>
#include <vector>

#include "boxprod/boxgroup.hpp"

namespace boxprod {

enum class WitnessKind { InvariantPartition, DisconnectedOrbitalGraph, BlockSystem, FixingElement };

std::string to_string(WitnessKind kind);

/// A finite object refuting primitivity or discreteness.
struct Witness {
  WitnessKind kind = WitnessKind::InvariantPartition;
  std::string construction;
  /// Partition kinds: the inner Y-vertices and a partition of their indices.
  std::vector<VertexId> vertices;
  std::optional<Partition> partition;
  /// Orbital-graph kind: the graph on `vertices` whose components give the
  /// partition.
  std::optional<FiniteGraph> graph;
  /// Fixing-element kind: a member fixing `fixed` pointwise.
  std::optional<Portrait> element;
  std::vector<VertexId> fixed;
};

struct WitnessCheck {
  bool ok = true;
  std::string detail;
};

struct ImprimitivityResult {
  /// Empty when the construction is delegated (M regular of degree >= 3).
  std::optional<Witness> witness;
  std::string reason;
};

/// An invariant partition of the inner Y-vertices. Throws PreconditionError
/// if M is primitive and not regular and N is transitive.
ImprimitivityResult imprimitivity_witness(const BoxContext& ctx);

/// The partition is neither discrete nor universal, and every generator and
/// inverse maps each block into a block wherever the images are defined and
/// inner.
WitnessCheck check_partition_witness(const Witness& witness, const FiniteApprox& approx);

enum class StepKind { Surgery, Collapse, Spread };

std::string to_string(StepKind kind);

/// elements[element] maps from to to.
struct ImageClaim {
  std::size_t element = 0;
  VertexId from = kNoVertex;
  VertexId to = kNoVertex;
};

struct CertificateStep {
  StepKind kind = StepKind::Surgery;
  std::string claim;
  /// Members used in the step.
  std::vector<Portrait> elements;
  std::vector<ImageClaim> images;
  /// Related pairs obtained by the step.
  std::vector<std::pair<VertexId, VertexId>> related;
  /// The block generated on a star, for the collapse step.
  std::optional<Partition> block;
  VertexId centre = kNoVertex;
};

/// Why any invariant relation containing (w, w2) is universal.
struct PrimitivityCertificate {
  VertexId w = kNoVertex, w2 = kNoVertex;
  std::vector<CertificateStep> steps;
};

/// Throws PreconditionError unless M is primitive and not regular and N is
/// transitive, or if w, w2 are not distinct inner Y-vertices.
PrimitivityCertificate primitivity_certificate(const BoxContext& ctx, VertexId w, VertexId w2);

WitnessCheck check_certificate(const BoxContext& ctx, const PrimitivityCertificate& cert);

/// A nontrivial member fixing phi pointwise, or nullopt when M and N are
/// both semiregular (no such element exists). Throws DomainError when the
/// truncation has no room away from phi.
std::optional<Witness> nondiscreteness_witness(const BoxContext& ctx,
                                               const std::vector<VertexId>& phi);

WitnessCheck check_fixing_witness(const BoxContext& ctx, const Witness& witness);

/// Exhaustive search for members fixing two Y-vertices at distance two.
struct DiscretenessSearch {
  VertexId w = kNoVertex, w2 = kNoVertex;
  std::size_t radius = 0;
  std::size_t fixing_w = 0;
  std::size_t fixing_both = 0;
  /// Every member fixing both is trivial on B(w, radius).
  bool only_identity = false;
};

DiscretenessSearch discreteness_search(const BoxContext& ctx, VertexId w, VertexId w2,
                                       std::size_t limit = 200'000);

}  // namespace boxprod
