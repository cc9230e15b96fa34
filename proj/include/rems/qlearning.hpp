#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>

#include "rems/operators.hpp"

namespace rems {

// The 10-component search state. A distinguished ZERO state absorbs
// unreachable outcomes.
struct QState {
    std::array<int, 10> s{}; // s1..s10
    bool zero = false;

    std::uint64_t key() const {
        if (zero) return 0;
        std::uint64_t k = 1;
        for (int v : s) k = k * 4 + static_cast<std::uint64_t>(v);
        return k;
    }
    static QState zero_state() {
        QState q;
        q.zero = true;
        return q;
    }
    bool operator==(const QState&) const = default;
};

struct QLearnParams {
    double alpha = 0.1;
    double gamma = 0.9;
    double epsilon = 0.1;
    int window = 200;               // success/selection counters reset cadence
    int stagnation_threshold = 20;  // consecutive non-improving moves for s10
};

struct QTable {
    std::unordered_map<std::uint64_t, std::array<double, kNumNeighborhoods>> q;
    std::array<int, kNumNeighborhoods> success_count{};   // sc_i
    std::array<int, kNumNeighborhoods> selected_count{};  // st_i
    int window_used = 0;
    bool built = false;

    const std::array<double, kNumNeighborhoods>& row(const QState& st) const {
        static const std::array<double, kNumNeighborhoods> zeros{};
        auto it = q.find(st.key());
        return it == q.end() ? zeros : it->second;
    }
    double value(const QState& st, int action) const {
        return row(st)[static_cast<std::size_t>(action)];
    }
    double max_value(const QState& st) const {
        auto it = q.find(st.key());
        if (it == q.end()) return 0.0;
        double best = it->second[0];
        for (double v : it->second) best = std::max(best, v);
        return best;
    }
    // p_i = sc_i / st_i, or 1 before the first selection in the window.
    double success_rate(int action) const {
        int st = selected_count[static_cast<std::size_t>(action)];
        return st > 0 ? static_cast<double>(success_count[static_cast<std::size_t>(action)]) / st
                      : 1.0;
    }
};

// State extraction per the s1..s10 rules.
QState compute_state(const ProblemModel& model, const EvaluatedSolution& sol,
                     int stagnation_counter, int stagnation_threshold = 20);

// Move reward in {-2..2}. next == nullopt means the move was unreachable.
int reward(const ProblemModel& model, const EvaluatedSolution& prev,
           const std::optional<EvaluatedSolution>& next);

// One temporal-difference Q update.
void update_q(QTable& table, const QState& s_t, int action, int r, const QState& s_next,
              double alpha, double gamma);

// Improved epsilon-greedy: explore uniformly with probability epsilon,
// otherwise roulette over the top ceil(0.2 * ns) actions by Q, weighted by
// historical success rates.
int select_action(const QTable& table, const QState& state, double epsilon, Rng& rng);

enum class SelectMode { QLearning, Adaptive, Random };

// Selection wrapper: owns the Q table, counters and stagnation tracking for
// one solver run.
class NeighborhoodSelector {
public:
    explicit NeighborhoodSelector(QLearnParams params = {}, SelectMode mode = SelectMode::QLearning)
        : params_(params), mode_(mode) {}

    // Generates a neighborhood solution; returns the input solution unchanged
    // when the selected move is unreachable. forced_kind overrides selection
    // for this call only (Q bookkeeping still runs).
    EvaluatedSolution propose(SearchContext& ctx, const EvaluatedSolution& sol,
                              std::optional<NeighborhoodKind> forced_kind = {});

    const QTable& table() const { return table_; }
    int last_reward() const { return last_reward_; }
    int stagnation() const { return stagnation_; }
    void reset_stagnation() { stagnation_ = 0; }

    // Debug dump: visited states as rows, actions as columns.
    std::string dump() const;

private:
    int select(SearchContext& ctx, const QState& state);

    QLearnParams params_;
    SelectMode mode_;
    QTable table_;
    int stagnation_ = 0;
    int last_reward_ = 0;
};

} // namespace rems
