#include "crcc/forms.hpp"

namespace crcc {

namespace {

Factor f(VarSet child, VarSet parents) { return Factor{std::move(child), std::move(parents), {}}; }

// Encoders see every auxiliary; only the channel factor is fixed.
void append_free_encoders(FactorizationSpec& s) {
  s.factors.push_back(f({"X1"}, {"W0", "W1", "U1", "W2", "U2"}));
  s.factors.push_back(f({"X2"}, {"W0", "W1", "U1", "W2", "U2", "X1"}));
  s.factors.push_back(f({"Y1", "Y2"}, {"X1", "X2"}));
}

}  // namespace

std::string to_string(Form form) {
  switch (form) {
    case Form::general: return "general";
    case Form::cmacc: return "cmacc";
    case Form::ic_hodtani: return "ic_hodtani";
    case Form::ic_hk: return "ic_hk";
    case Form::icc: return "icc";
    case Form::crc: return "crc";
  }
  return "unknown";
}

FactorizationSpec structure_of(Form form) {
  FactorizationSpec s;
  switch (form) {
    case Form::general:
      s.factors = {f({"W0"}, {}),
                   f({"W1"}, {"W0"}),
                   f({"U1"}, {"W0", "W1"}),
                   f({"W2"}, {"W0", "W1", "U1"}),
                   f({"U2"}, {"W0", "W2", "W1", "U1"}),
                   f({"X1"}, {"W0", "W1", "U1"}),
                   f({"X2"}, {"W0", "W2", "U2"}),
                   f({"Y1", "Y2"}, {"X1", "X2"})};
      return s;
    case Form::cmacc:
      s.factors = {f({"W0"}, {}),
                   f({"W1"}, {"W0"}),
                   f({"W2"}, {"W0"}),
                   f({"U1"}, {}),
                   f({"U2"}, {}),
                   f({"X1"}, {"W0", "W1"}),
                   f({"X2"}, {"W0", "W2"}),
                   f({"Y1", "Y2"}, {"X1", "X2"})};
      return s;
    case Form::ic_hodtani:
      s.factors = {f({"W0"}, {}), f({"W1"}, {"W0"}), f({"U1"}, {"W0", "W1"}), f({"W2"}, {"W0"}),
                   f({"U2"}, {"W0", "W2"})};
      break;
    case Form::ic_hk:
      s.factors = {f({"W0"}, {}), f({"W1"}, {"W0"}), f({"U1"}, {"W0"}), f({"W2"}, {"W0"}), f({"U2"}, {"W0"})};
      break;
    case Form::icc:
      s.factors = {f({"W0"}, {}), f({"W1"}, {"W0"}), f({"U1"}, {"W0", "W1"}), f({"W2"}, {"W0"}),
                   f({"U2"}, {"W0", "W2"})};
      break;
    case Form::crc:
      s.factors = {f({"W0"}, {}), f({"W1"}, {"W0"}), f({"U1"}, {"W0", "W1"}), f({"W2"}, {"W0", "U1", "W1"}),
                   f({"U2"}, {"W0", "U1", "W1", "W2"})};
      break;
  }
  append_free_encoders(s);
  return s;
}

}  // namespace crcc
