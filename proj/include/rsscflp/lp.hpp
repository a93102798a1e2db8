#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace rsscflp::lp {

enum class RowSense { kGreaterEqual, kEqual };

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct LpSolution {
  SolveStatus status = SolveStatus::kOptimal;
  double objective = 0.0;
  std::vector<double> primal;  // structural columns only
  std::vector<double> dual;    // one multiplier per row; >= rows give dual >= 0
  double duality_gap = 0.0;    // |primal obj - dual obj| actually achieved
  long iterations = 0;
};

// Minimization LP over rows of sense >= or == with box-constrained columns,
// solved by a bounded-variable revised primal simplex with a dense basis
// inverse. Designed for column generation: columns can be appended between
// solves and the previous basis is reused whenever it is still primal
// feasible; otherwise the solver falls back to a two-phase start.
class LpProblem {
 public:
  static constexpr double kInfinity = 1e30;

  int add_row(RowSense sense, double rhs);
  int add_column(double cost, std::span<const std::pair<int, double>> entries,
                 double lower, double upper);

  void set_column_upper(int col, double upper);
  void set_row_sense(int row, RowSense sense);

  int num_rows() const { return static_cast<int>(rows_.size()); }
  int num_cols() const { return static_cast<int>(cols_.size()); }
  double column_cost(int col) const { return cols_[col].cost; }

  // Variable ids used by set_basis: structural columns are their own id,
  // slack of row r is slack_id(r). Artificial variables are internal.
  static int slack_id(int row) { return kSlackBase + row; }

  // Installs a starting basis (one id per row, any order). The solver
  // verifies primal feasibility and quietly falls back to phase 1 if the
  // guess is stale.
  void set_basis(std::span<const int> basic_ids);
  void clear_basis();

  LpSolution solve();

 private:
  static constexpr int kSlackBase = 1 << 28;
  static constexpr int kArtBase = 1 << 29;

  struct Column {
    double cost;
    double lower;
    double upper;
    std::vector<std::pair<int, double>> entries;
  };
  struct Row {
    RowSense sense;
    double rhs;
  };

  // Variable access across the three id ranges.
  double var_cost(int id, bool phase1) const;
  double var_lower(int id) const;
  double var_upper(int id) const;
  void var_column(int id, std::vector<std::pair<int, double>>& out) const;
  bool var_fixed(int id) const;

  double nonbasic_value(int id) const;
  void set_nonbasic_state(int id, bool at_upper);
  bool nonbasic_at_upper(int id) const;

  bool refactorize();           // rebuilds binv_ from basis_, false if singular
  void recompute_basic_values();
  bool basis_feasible(double tol) const;
  void install_artificial_basis();

  // Runs the simplex to optimality for the given phase. Returns the status.
  SolveStatus iterate(bool phase1, long& iterations);

  std::vector<Row> rows_;
  std::vector<Column> cols_;

  std::vector<int> basis_;          // encoded ids, size == rows when valid
  bool basis_valid_ = false;
  std::vector<double> binv_;        // dense row-major nr x nr
  std::vector<double> xb_;          // basic values, aligned with basis_
  std::vector<char> at_upper_struct_;
  std::vector<char> at_upper_slack_;
  std::vector<double> art_sign_;    // +-1 per row once phase 1 ran
  bool arts_active_ = false;        // true only while phase 1 is running
  std::vector<char> in_basis_struct_;
  std::vector<char> in_basis_slack_;
  std::vector<char> in_basis_art_;
};

}  // namespace rsscflp::lp
