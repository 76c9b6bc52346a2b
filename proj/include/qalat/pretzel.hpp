#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qalat/linalg.hpp"

namespace qalat {

// Normalized pretzel parameters: the link P(-e; p_1,...,p_n, -q_1,...,-q_m)
// with e >= 0, every p_i >= 2 and every q_j >= 3.  Arbitrary pretzels reach
// this form through normalize_pretzel (possibly after mirroring).
struct PretzelSpec {
  int e = 0;
  std::vector<int> p;
  std::vector<int> q;
};

// Throws std::invalid_argument when e < 0, some p_i < 2, or some q_j < 3.
void validate_pretzel(const PretzelSpec& s);

// Exact determinant p_1...p_n * q_1...q_m * (e + sum 1/p_i - sum 1/q_j),
// evaluated over the rationals and asserted integral.  The value can be zero
// or negative outside the quasi-alternating cases (and for some orientation
// conventions inside them); it is returned as-is, never as an absolute value.
Int pretzel_determinant(const PretzelSpec& s);

enum class LinkKind { UNKNOT, PRETZEL, ALTERNATING_FORM };

// A link appearing in a certificate tree: the unknot, a pretzel given by its
// normalized parameters, or a link presented by a connected alternating
// Montesinos diagram (recorded as a rendered parameter list).
struct LinkNode {
  LinkKind kind = LinkKind::UNKNOT;
  std::optional<PretzelSpec> spec;  // PRETZEL / ALTERNATING_FORM parameters
  std::string montesinos;           // ALTERNATING_FORM rendering M(...)
  Int det = 1;
};

// Render M(e-m; (p_1,1),...,(p_n,1),(q_1,q_1-1),...,(q_m,q_m-1)) for a spec
// with e >= m (the alternating-diagram description).
std::string montesinos_description(const PretzelSpec& s);

// Binary resolution tree witnessing quasi-alternating-ness: every internal
// node resolves one crossing into two links whose determinants add up to the
// parent's, all positive; leaves are links accepted as quasi-alternating
// directly (the unknot, alternating forms, or single-negative-tassle pretzels
// that satisfy the minimum criterion).
struct QACertificate {
  LinkNode link;
  std::string crossing;  // internal nodes: which tassle was resolved
  std::unique_ptr<QACertificate> child0, child1;

  bool is_leaf() const { return !child0 && !child1; }
};

enum class Verdict { QA, NOT_QA };

std::string to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::NOT_QA;
  std::string case_tag;  // which classification clause fired
  Int det = 0;           // determinant formula value, as-is
  bool det_positive = false;
  std::string note;  // conventions applied (degenerate corners, sign flags)
  std::shared_ptr<const QACertificate> certificate;  // inductive cases only
};

// Decide quasi-alternating-ness from the normalized parameters.  Parameter
// lists are sorted internally (the link type only depends on the multiset).
// Clauses, in the order they are tested:
//   degenerate   e = 0, n = m = 0 (unknot/unlink corner, QA by convention)
//   case (1)     e > m-1: connected alternating diagram
//   case (2)     e = m-1 > 0: inductive resolution, certificate attached
//   case (4)     e = 0, m = 1, and n <= 1 or q_1 > min(p)
//   case (3)     e = 0, n = 1, and m <= 1 or p_1 > min(q)
//   alternating  e = 0, n = 0, m >= 2 (all-negative alternating diagram)
//   NOT_QA       e = 0, m = 1, n >= 2, q_1 <= min(p)   (minimum criterion)
//   NOT_QA       e = 0, n = 1, m >= 2, p_1 <= min(q)   (mirror criterion)
//   NOT_QA       e < m-1, e+n >= 2                     (thickness, cited)
//   NOT_QA       e = 1, n = 0, m >= 3                  (mirror criterion)
Classification classify(PretzelSpec s);

// Construct the resolution-tree certificate for case (1) (single alternating
// leaf) or case (2) (resolve a crossing in the tassle with -q_m half-twists;
// the q_m = 3 branch rewrites P(e; ..., -2) as P(e-1; 2, ...)).  Throws
// std::runtime_error("no constructive certificate path for this case") for
// every other classification outcome.
QACertificate build_certificate(PretzelSpec s);

struct VerifyResult {
  bool ok = true;
  std::string failing_path;  // "root", "root.0", "root.1.0", ... when !ok
  std::string reason;
};

// Re-check every certificate invariant from scratch: internal nodes satisfy
// exact determinant additivity with all three values positive; unknot leaves
// have determinant 1; pretzel and alternating-form leaves carry parameters
// whose determinant formula reproduces the stored value, positively, and
// (for pretzel leaves) classify to QA.
VerifyResult verify_certificate_detail(const QACertificate& c);
bool verify_certificate(const QACertificate& c);

struct NormalizedPretzel {
  PretzelSpec spec;
  bool mirrored = false;
};

// Bring a raw signed parameter list (with optional explicit twist parameter
// e) to the normalized form, mirroring the link when needed.  Entries of -2
// are absorbed by the rewrite P(e; ..., -2) = P(e-1; 2, ...) while e >= 1.
// The un-mirrored reading is preferred when both orientations normalize.
// Entries of absolute value 1 are rejected ("reduce the diagram first"), as
// are zero entries; inputs that normalize in neither orientation are errors.
NormalizedPretzel normalize_pretzel(const std::vector<int>& raw, std::optional<int> e);

struct ParsedPretzel {
  std::vector<int> raw;
  std::optional<int> e;  // from the leading "-e;" group when present
  NormalizedPretzel normalized;
};

// Parse "P(a1,a2,...,ak)" or "P(-e; a1,...,ak)" (the leading value is -e) and
// normalize.  Throws std::invalid_argument with a description on bad syntax.
ParsedPretzel parse_pretzel(const std::string& text);

// Certificate (de)serialization to a documented JSON tree; determinants are
// decimal strings so arbitrarily large values survive the round trip.
std::string certificate_to_json(const QACertificate& c);
QACertificate certificate_from_json(const std::string& text);

}  // namespace qalat
