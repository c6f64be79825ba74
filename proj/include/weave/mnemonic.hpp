#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace weave {

/// The fifteen concept mnemonics. Three are aliases of another mnemonic
/// (see `normal_form`), so twelve behave distinctly.
enum class Mnemonic : unsigned char {
  I,
  C,
  SPE,
  SPEStar,
  SPEPrime,
  PE,
  PEStar,
  PEPrime,
  PFA1,
  PFA1Star,
  PFA1Prime,
  PFAn,
  PFAnStar,
  PFAnPrime,
  W,
};

inline constexpr std::array<Mnemonic, 15> kAllMnemonics = {
    Mnemonic::I,        Mnemonic::C,         Mnemonic::SPE,      Mnemonic::SPEStar,
    Mnemonic::SPEPrime, Mnemonic::PE,        Mnemonic::PEStar,   Mnemonic::PEPrime,
    Mnemonic::PFA1,     Mnemonic::PFA1Star,  Mnemonic::PFA1Prime, Mnemonic::PFAn,
    Mnemonic::PFAnStar, Mnemonic::PFAnPrime, Mnemonic::W,
};

constexpr std::string_view spelling(Mnemonic m) noexcept {
  switch (m) {
    case Mnemonic::I: return "I";
    case Mnemonic::C: return "C";
    case Mnemonic::SPE: return "SPE";
    case Mnemonic::SPEStar: return "SPE*";
    case Mnemonic::SPEPrime: return "SPE'";
    case Mnemonic::PE: return "PE";
    case Mnemonic::PEStar: return "PE*";
    case Mnemonic::PEPrime: return "PE'";
    case Mnemonic::PFA1: return "PFA1";
    case Mnemonic::PFA1Star: return "PFA1*";
    case Mnemonic::PFA1Prime: return "PFA1'";
    case Mnemonic::PFAn: return "PFAn";
    case Mnemonic::PFAnStar: return "PFAn*";
    case Mnemonic::PFAnPrime: return "PFAn'";
    case Mnemonic::W: return "W";
  }
  return "?";
}

constexpr std::optional<Mnemonic> mnemonic_from_spelling(std::string_view s) noexcept {
  for (Mnemonic m : kAllMnemonics) {
    if (spelling(m) == s) return m;
  }
  return std::nullopt;
}

/// Representative of the equivalence class: PFA1' -> C, PFAn' -> PFAn*, PE' -> PE*.
constexpr Mnemonic normal_form(Mnemonic m) noexcept {
  switch (m) {
    case Mnemonic::PFA1Prime: return Mnemonic::C;
    case Mnemonic::PFAnPrime: return Mnemonic::PFAnStar;
    case Mnemonic::PEPrime: return Mnemonic::PEStar;
    default: return m;
  }
}

/// Mnemonics that may have sub-dialogs (non-atomic children). Classification
/// is by normal form, so PFA1' counts as C.
constexpr bool is_subdialog_capable(Mnemonic m) noexcept {
  switch (normal_form(m)) {
    case Mnemonic::C:
    case Mnemonic::SPEPrime:
    case Mnemonic::W:
    case Mnemonic::PFA1:
    case Mnemonic::SPE:
      return true;
    default:
      return false;
  }
}

constexpr bool is_atoms_only(Mnemonic m) noexcept { return !is_subdialog_capable(m); }

/// Mnemonics whose direct children may carry arrows. The others accept
/// several responses in one utterance, where an arrow would be ambiguous.
constexpr bool admits_arrowed_children(Mnemonic m) noexcept {
  switch (normal_form(m)) {
    case Mnemonic::C:
    case Mnemonic::SPEPrime:
    case Mnemonic::W:
      return true;
    default:
      return false;
  }
}

/// ATOM-1 applies to these; ATOM-2 to every other mnemonic.
constexpr bool collapses_any_single_child(Mnemonic m) noexcept {
  const Mnemonic n = normal_form(m);
  return n == Mnemonic::C || n == Mnemonic::SPEPrime;
}

}  // namespace weave
