#pragma once

#include <cstdint>
#include <set>

#include "quiver/ast.hpp"
#include "quiver/eval.hpp"

namespace quiver {

struct ContainsLoop : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TooManyCandidates : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ground-truth brute-force evaluation of vp[[S]](X)(sigma) by structural
// recursion on the statement, with no symbolic intermediate. Loop-free,
// desugared statements only. `budget` caps the number of evaluation steps
// (default one million).
ExtReal vp_oracle(const StmtPtr& s, const ExprPtr& post, const State& sigma,
                  const FiniteDomains& dom, std::uint64_t budget = 1000000);

enum class SliceDirection { FindError, FindVerifying };

// A sliceable unit: either an atomic statement or one branch of an explicit
// nondeterministic choice.
struct Candidate {
  int stmt_id = 0;       // the atom, or the choice statement for branches
  int branch = -1;       // -1 = atom, 0/1 = branch of the choice
  Span span;
  StmtKind stmt_kind = StmtKind::Assert;
  StmtRole role = StmtRole::None;
  StmtOrigin origin = StmtOrigin::User;
  std::string enabled_var;  // assigned by instrument()
  std::string label;        // human-readable description

  bool is_branch() const { return branch >= 0; }
};

// Syntactically erases the disabled candidates from a statement tree.
// Disabled atoms disappear; a choice with exactly one enabled branch is
// replaced by that branch. Selections disabling both branches of a choice
// are invalid and must be filtered by the caller.
StmtPtr erase_candidates(const StmtPtr& s, const std::vector<Candidate>& cands,
                         const std::vector<bool>& enabled);

bool selection_respects_choices(const std::vector<Candidate>& cands,
                                const std::vector<bool>& enabled);

struct SliceEnumeration {
  // Bitmask per valid selection; bit i = candidate i enabled.
  std::set<std::uint32_t> valid;
  std::uint32_t total_checked = 0;
};

// Exhaustive 2^n classification of selections against the slice definitions,
// evaluated with vp_oracle over every state of the finite domain. `s` is the
// embedded, desugared body; proc direction picks the top value (infinity or
// zero) the triple is checked against.
SliceEnumeration enumerate_slices(const StmtPtr& s,
                                  const std::vector<Candidate>& cands,
                                  SliceDirection goal, Direction dir,
                                  const std::map<std::string, Type>& vars,
                                  const FiniteDomains& dom);

}  // namespace quiver
