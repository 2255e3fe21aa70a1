#include "iwb/interpolate.hpp"

namespace iwb {

std::string_view method_name(InterpolationMethod m) noexcept {
  return m == InterpolationMethod::Maehara ? "maehara" : "labelled";
}

InterpolationMethod parse_method(std::string_view text) {
  if (text == "maehara") return InterpolationMethod::Maehara;
  if (text == "labelled" || text == "labeled") return InterpolationMethod::Labelled;
  throw InvalidInput("unknown interpolation method '" + std::string(text) + "' (expected maehara or labelled)");
}

namespace {

Logic frames_logic(FrameConditionSet frames) {
  return {LogicKind::Frames, frames, "frames:" + render_frame_conditions(frames)};
}

Logic logic_of(CalculusId c) {
  using FC = FrameCondition;
  switch (c.kind) {
    case CalculusKind::LK: return {LogicKind::CPC, {}, "CPC"};
    case CalculusKind::LJ: return {LogicKind::IPC, {}, "IPC"};
    case CalculusKind::G3K: return {LogicKind::K, {}, "K"};
    case CalculusKind::G3T: return {LogicKind::T, {FC::Reflexive}, "T"};
    case CalculusKind::G3D: return {LogicKind::D, {FC::Serial}, "D"};
    case CalculusKind::G3K4: return {LogicKind::K4, {FC::Transitive}, "K4"};
    case CalculusKind::G3S4: return {LogicKind::S4, {FC::Reflexive, FC::Transitive}, "S4"};
    case CalculusKind::G3GL: return {LogicKind::GL, {FC::Transitive, FC::ConverseWellFounded}, "GL"};
    case CalculusKind::GS5: return {LogicKind::S5, {FC::Reflexive, FC::Euclidean}, "S5"};
    case CalculusKind::LG3: return frames_logic(c.frames);
  }
  return {};
}

const SideAssignment kPhiPsi{{Side::Left}, {Side::Right}};

bool is_phi_psi(const SideAssignment& s) {
  return s.ant.size() == 1 && s.suc.size() == 1 && s.ant[0] == Side::Left && s.suc[0] == Side::Right;
}

std::string display_name(const Logic& l, CalculusId c) {
  if (!l.name.empty()) return l.name;
  return l.kind == LogicKind::Frames ? "frames:" + render_frame_conditions(l.frames) : logic_of(c).name;
}

}  // namespace

Fixture InterpolationResult::as_fixture() const {
  Fixture f;
  f.name = "replay";
  f.mode = mode;
  if (labelled_proof) {
    f.body = LabelledFixture{calculus.frames, labelled_proof->conclusion.sides, erase_split(*labelled_proof)};
    if (multiformula) f.expected = render_multiformula(*multiformula);
    f.expected_form = render_formula(interpolant);
  } else if (split_proof) {
    f.body = UnlabelledFixture{calculus, split_proof->conclusion.sides, erase_split(*split_proof)};
    f.expected = render_formula(interpolant);
  } else {
    throw InvalidInput("result carries no derivation");
  }
  return f;
}

InterpolationOutcome interpolate_labelled(FrameConditionSet frames, const Formula& phi, const Formula& psi,
                                          InterpolationMode mode, const InterpolationOptions& options) {
  if (frames.has(FrameCondition::ConverseWellFounded))
    throw UnsupportedMode("no labelled calculus for converse well-founded frames");
  const LabelledSequent goal{{}, {{1, phi}}, {{1, psi}}};
  LabelledSearchOptions so;
  so.budget = options.budget;
  so.atomic_axioms = mode == InterpolationMode::Lyndon;
  auto found = prove_labelled(frames, goal, so);

  InterpolationOutcome out;
  out.status = found.status;
  out.stats = found.stats;
  if (found.certificate) out.certificate = found.certificate;
  if (!found.proof) return out;

  InterpolationResult r;
  r.logic = "frames:" + render_frame_conditions(frames);
  r.mode = mode;
  r.method = InterpolationMethod::Labelled;
  r.calculus = CalculusId::lg3(frames);
  r.labelled_proof = extract_labelled_interpolant(split_labelled_proof(*found.proof, split(goal, kPhiPsi), frames),
                                                  frames, mode);
  r.multiformula = *r.labelled_proof->interpolant;
  r.interpolant = mf_form(*r.multiformula);
  if (options.verify) r.verification = verify_craig(frames_logic(frames), phi, r.interpolant, psi, mode, options.budget);
  out.result = std::move(r);
  return out;
}

InterpolationOutcome interpolate(const Logic& logic, const Formula& phi, const Formula& psi, InterpolationMode mode,
                                 const InterpolationOptions& options) {
  CalculusId calc = logic.kind == LogicKind::S5 && options.method == InterpolationMethod::Maehara
                        ? CalculusId{CalculusKind::GS5, {}}
                        : calculus_for_logic(logic);
  if (options.method == InterpolationMethod::Labelled || calc.labelled()) {
    if (logic.propositional()) throw UnsupportedMode("the labelled method needs a modal logic");
    auto out = interpolate_labelled(logic.frames, phi, psi, mode, options);
    if (out.result) {
      out.result->logic = display_name(logic, calc);
      if (options.verify) out.result->verification = verify_craig(logic, phi, out.result->interpolant, psi, mode, options.budget);
    }
    return out;
  }
  if (mode == InterpolationMode::Lyndon && (calc.kind == CalculusKind::G3GL || calc.kind == CalculusKind::GS5))
    throw UnsupportedMode("Lyndon interpolation is not offered for " + calculus_name(calc));

  const Sequent goal{{phi}, {psi}};
  SearchOptions so;
  so.budget = options.budget;
  auto found = prove(calc, goal, so);

  InterpolationOutcome out;
  out.status = found.status;
  out.stats = found.stats;
  if (found.certificate) out.certificate = found.certificate;
  if (!found.proof) return out;

  InterpolationResult r;
  r.logic = display_name(logic, calc);
  r.mode = mode;
  r.method = InterpolationMethod::Maehara;
  r.calculus = calc;
  r.split_proof = extract_interpolant(split_proof(*found.proof, split(goal, kPhiPsi), calc), calc, mode);
  r.interpolant = *r.split_proof->interpolant;
  if (options.verify) r.verification = verify_craig(logic, phi, r.interpolant, psi, mode, options.budget);
  out.result = std::move(r);
  return out;
}

InterpolationResult replay(const Fixture& fixture, bool verify) {
  InterpolationResult r;
  r.mode = fixture.mode;
  if (const auto* u = std::get_if<UnlabelledFixture>(&fixture.body)) {
    const Logic logic = logic_of(u->calculus);
    r.logic = logic.name;
    r.method = InterpolationMethod::Maehara;
    r.calculus = u->calculus;
    r.split_proof = extract_interpolant(split_proof(u->proof, split(u->proof.conclusion, u->root_sides), u->calculus),
                                        u->calculus, fixture.mode);
    r.interpolant = *r.split_proof->interpolant;
    const auto& root = r.split_proof->conclusion;
    if (verify && is_phi_psi(root.sides))
      r.verification = verify_craig(logic, root.sequent.ant[0], r.interpolant, root.sequent.suc[0], fixture.mode);
    return r;
  }
  const auto& l = std::get<LabelledFixture>(fixture.body);
  const Logic logic = frames_logic(l.frames);
  r.logic = logic.name;
  r.method = InterpolationMethod::Labelled;
  r.calculus = CalculusId::lg3(l.frames);
  r.labelled_proof = extract_labelled_interpolant(
      split_labelled_proof(l.proof, split(l.proof.conclusion, l.root_sides), l.frames), l.frames, fixture.mode);
  r.multiformula = *r.labelled_proof->interpolant;
  r.interpolant = mf_form(*r.multiformula);
  const auto& root = r.labelled_proof->conclusion;
  if (verify && is_phi_psi(root.sides) && root.sequent.rel.empty() &&
      root.sequent.ant[0].label == root.sequent.suc[0].label)
    r.verification =
        verify_craig(logic, root.sequent.ant[0].formula, r.interpolant, root.sequent.suc[0].formula, fixture.mode);
  return r;
}

std::vector<std::string> expectation_mismatches(const Fixture& fixture, const InterpolationResult& result) {
  std::vector<std::string> out;
  const std::string got = render_formula(result.interpolant);
  if (std::holds_alternative<UnlabelledFixture>(fixture.body)) {
    if (fixture.expected) {
      const std::string want = render_formula(parse_formula(*fixture.expected));
      if (want != got) out.push_back("interpolant: expected " + want + ", got " + got);
    }
    return out;
  }
  if (fixture.expected && result.multiformula) {
    const std::string uni = render_multiformula(*result.multiformula, Notation::Unicode);
    const std::string ascii = render_multiformula(*result.multiformula, Notation::Ascii);
    if (*fixture.expected != uni && *fixture.expected != ascii)
      out.push_back("multiformula: expected " + *fixture.expected + ", got " + uni);
  }
  if (fixture.expected_form) {
    const std::string want = render_formula(parse_formula(*fixture.expected_form));
    if (want != got) out.push_back("form: expected " + want + ", got " + got);
  }
  return out;
}

Json result_to_json(const InterpolationResult& r) {
  Json j{{"logic", r.logic},
         {"mode", mode_name(r.mode)},
         {"method", method_name(r.method)},
         {"calculus", calculus_name(r.calculus)},
         {"interpolant", render_formula(r.interpolant)}};
  if (r.multiformula) {
    j["multiformula"] = render_multiformula(*r.multiformula);
    j["multiformula_tree"] = multiformula_to_json(*r.multiformula);
  }
  if (r.split_proof) j["proof"] = split_proof_to_json(*r.split_proof);
  if (r.labelled_proof) j["proof"] = labelled_split_proof_to_json(*r.labelled_proof);
  j["replay"] = fixture_to_json(r.as_fixture());
  if (r.verification) {
    j["verified"] = r.verification->passed();
    j["checks"] = verification_to_json(*r.verification);
  } else {
    j["verified"] = nullptr;
  }
  return j;
}

}  // namespace iwb
