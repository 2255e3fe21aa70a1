#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>

#include "iwb/calculi.hpp"
#include "iwb/modes.hpp"
#include "iwb/oracle.hpp"
#include "iwb/universal.hpp"
#include "iwb/verify.hpp"
#include "json.hpp"

namespace iwb {

using Json = nlohmann::json;

// Formulas and sequents travel as ASCII strings; every reader throws
// InvalidInput on malformed structure.

Json proof_to_json(const ProofTree& t);
ProofTree proof_from_json(const Json& j);
Json split_proof_to_json(const SplitProofTree& t);  // with per-node interpolants

Json labelled_proof_to_json(const LabelledProofTree& t);
LabelledProofTree labelled_proof_from_json(const Json& j);
Json labelled_split_proof_to_json(const LabelledSplitProofTree& t);

// {"lab": [i, "A"]}, {"and": [m, n]}, {"or": [m, n]}
Json multiformula_to_json(const Multiformula& m);
Multiformula multiformula_from_json(const Json& j);

// {"worlds": n, "relation": [[i, j], ...], "valuation": {"0": ["p"], ...}, "refuted_at": i}
Json countermodel_to_json(const Countermodel& c);
Countermodel countermodel_from_json(const Json& j);

Json verification_to_json(const VerificationReport& r);
Json classification_to_json(const ClassificationReport& r);

std::string_view mode_name(InterpolationMode m) noexcept;
InterpolationMode parse_mode(std::string_view text);  // "craig" | "lyndon"

// Sides of the root occurrences, "L" or "R" per occurrence.
Json sides_to_json(const SideAssignment& s);
SideAssignment sides_from_json(const Json& j);

// A stored split derivation to be replayed without search.
struct UnlabelledFixture {
  CalculusId calculus;
  SideAssignment root_sides;
  ProofTree proof;
};

struct LabelledFixture {
  FrameConditionSet frames;
  SideAssignment root_sides;
  LabelledProofTree proof;
};

struct Fixture {
  std::string name;
  InterpolationMode mode = InterpolationMode::Craig;
  std::variant<UnlabelledFixture, LabelledFixture> body;
  std::optional<std::string> expected;       // interpolant, or multiformula for labelled fixtures
  std::optional<std::string> expected_form;  // labelled fixtures: the collapsed formula
};

Json fixture_to_json(const Fixture& f);
Fixture fixture_from_json(const Json& j);
Fixture load_fixture(const std::filesystem::path& path);

// Parses JSON text; a syntax error becomes InvalidInput.
Json parse_json(std::string_view text);

}  // namespace iwb
