#include "eddymgrit/mgrit/engine.hpp"

#include "eddymgrit/stepper/bordered_solver.hpp"

#include <cmath>
#include <string>

namespace eddymgrit::mgrit {

namespace {

class RediscretizedOperator final : public LevelOperator {
public:
    RediscretizedOperator(const stepper::BackwardEuler& stepper, double dt) : stepper_(stepper), dt_(dt) {}

    State apply_row(std::size_t, const State& u_j, const State& u_prev) const override {
        return stepper_.model().row_action(u_j, u_prev, dt_);
    }

    State solve_row(std::size_t, const State& u_prev, const State& g_j, const State& guess) const override {
        return stepper_.solve_row(u_prev, dt_, g_j, guess).u;
    }

private:
    const stepper::BackwardEuler& stepper_;
    double dt_;
};

// Coarse row j composed of the m-1 fine F-steps of coarse interval j,
// driven by the fine right-hand side, followed by the fine row at the C-point.
class IdealOperator final : public LevelOperator {
public:
    IdealOperator(const stepper::BackwardEuler& stepper, double fine_dt, std::size_t m,
                  const std::vector<State>& fine_rhs)
        : stepper_(stepper), dt_(fine_dt), m_(m), fine_rhs_(fine_rhs) {}

    State apply_row(std::size_t j, const State& u_j, const State& u_prev) const override {
        return stepper_.model().row_action(u_j, advance(j, u_prev), dt_);
    }

    State solve_row(std::size_t j, const State& u_prev, const State& g_j, const State& guess) const override {
        return stepper_.solve_row(advance(j, u_prev), dt_, g_j, guess).u;
    }

private:
    State advance(std::size_t j, const State& u_prev) const {
        State w = u_prev;
        for (std::size_t s = 1; s < m_; ++s) {
            const std::size_t fine = (j - 1) * m_ + s;
            w = stepper_.solve_row(w, dt_, fine_rhs_.at(fine), w).u;
        }
        return w;
    }

    const stepper::BackwardEuler& stepper_;
    double dt_;
    std::size_t m_;
    const std::vector<State>& fine_rhs_;
};

void append(std::vector<double>& out, const State& s) {
    out.insert(out.end(), s.a.begin(), s.a.end());
    out.push_back(s.i);
}

double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            s += x[k];
        }
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

void expect(const Message& msg, MessageKind kind, std::size_t level, std::size_t index) {
    if (msg.kind != kind || msg.level != static_cast<std::int32_t>(level) ||
        msg.index != static_cast<std::int32_t>(index)) {
        throw ProtocolError("unexpected message (level " + std::to_string(msg.level) + ", index " +
                            std::to_string(msg.index) + "), expected level " + std::to_string(level) +
                            ", index " + std::to_string(index));
    }
}

}  // namespace

Engine::Engine(const Hierarchy& hierarchy, const stepper::BackwardEuler& stepper, const Layout& layout,
               Communicator& comm, EngineOptions options, const std::vector<State>* fine_rhs)
    : hierarchy_(&hierarchy),
      stepper_(&stepper),
      layout_(&layout),
      comm_(&comm),
      options_(options),
      rank_(comm.rank()) {
    const std::size_t levels = hierarchy.level_count();
    if (layout.workers != static_cast<std::size_t>(comm.size()) || layout.ranges.size() != levels) {
        throw std::invalid_argument("layout does not match communicator or hierarchy");
    }
    for (std::size_t l = 0; l < levels; ++l) {
        if (layout.ranges[l].front().begin != 0) {
            throw std::invalid_argument("rank 0 must own the first point of every level");
        }
    }
    if (options.coarse == CoarseOperator::ideal) {
        if (levels != 2) {
            throw std::invalid_argument("the ideal coarse operator needs a two-level hierarchy");
        }
        if (fine_rhs == nullptr || fine_rhs->size() != hierarchy.level(0).points()) {
            throw std::invalid_argument("the ideal coarse operator needs the finest right-hand side");
        }
    }

    const std::size_t nodes = stepper.model().node_count();
    for (std::size_t l = 0; l < levels; ++l) {
        const TimeLevel& lev = hierarchy.level(l);
        if (l > 0 && options.coarse == CoarseOperator::ideal) {
            const TimeLevel& fine = hierarchy.level(l - 1);
            operators_.push_back(std::make_unique<IdealOperator>(stepper, fine.dt, fine.coarsening, *fine_rhs));
        } else {
            operators_.push_back(std::make_unique<RediscretizedOperator>(stepper, lev.dt));
        }
        const IndexRange r = layout.range(l, rank_);
        levels_.emplace_back(r, std::vector<State>(r.size(), State::zeros(nodes)),
                             std::vector<State>(r.size(), State::zeros(nodes)));
    }
    restricted_.resize(levels);
    visits_.assign(levels, 0);
}

Engine::~Engine() = default;

void Engine::initialize(std::span<const State> u, std::span<const State> g) {
    const std::size_t points = hierarchy_->level(0).points();
    if (u.size() != points || g.size() != points) {
        throw std::invalid_argument("initialize: vectors do not match the finest level");
    }
    SpaceTimeFunction& fine = levels_.front();
    const IndexRange r = fine.range();
    for (std::size_t j = r.begin; j < r.end; ++j) {
        fine.u(j) = u[j];
        fine.g(j) = g[j];
    }
}

bool Engine::has_left(std::size_t l) const { return layout_->prev_active(l, rank_).has_value(); }
bool Engine::has_right(std::size_t l) const { return layout_->next_active(l, rank_).has_value(); }

void Engine::send_right(std::size_t l, const State& s) {
    const IndexRange r = levels_[l].range();
    comm_->send(*layout_->next_active(l, rank_),
                Message{MessageKind::boundary, static_cast<std::int32_t>(l), static_cast<std::int32_t>(r.end - 1),
                        flatten(s)});
}

State Engine::recv_left(std::size_t l) {
    const IndexRange r = levels_[l].range();
    Message msg = comm_->recv(*layout_->prev_active(l, rank_));
    expect(msg, MessageKind::boundary, l, r.begin - 1);
    return unflatten(msg.payload.data(), msg.payload.size() - 1);
}

State Engine::solve(std::size_t l, std::size_t j, const State& u_prev, const State& g_j, const State& guess) const {
    try {
        return operators_[l]->solve_row(j, u_prev, g_j, guess);
    } catch (const stepper::NewtonFailure& e) {
        throw RowSolveError(l, j, "level " + std::to_string(l) + ", row " + std::to_string(j) + ": " + e.what());
    } catch (const stepper::LinearSolveError& e) {
        throw RowSolveError(l, j, "level " + std::to_string(l) + ", row " + std::to_string(j) + ": " + e.what());
    }
}

void Engine::propagate(std::size_t l, std::size_t first, std::size_t last, const State& seed) {
    SpaceTimeFunction& st = levels_[l];
    for (std::size_t j = first; j <= last; ++j) {
        const State& prev = j == first ? seed : st.u(j - 1);
        State next = solve(l, j, prev, st.g(j), prev);
        st.u(j) = std::move(next);
    }
}

void Engine::f_relax(std::size_t l) {
    const std::size_t m = hierarchy_->level(l).coarsening;
    if (m == 0) {
        throw std::logic_error("F-relaxation on the coarsest level");
    }
    SpaceTimeFunction& st = levels_[l];
    const IndexRange r = st.range();
    if (r.empty()) {
        return;
    }
    const std::size_t first_c = (r.begin + m - 1) / m * m;
    if (first_c >= r.end) {
        // The whole range sits inside one coarse interval.
        const State ghost = recv_left(l);
        propagate(l, r.begin, r.end - 1, ghost);
        if (has_right(l)) {
            send_right(l, st.u(r.end - 1));
        }
        return;
    }
    const std::size_t last_c = (r.end - 1) / m * m;
    if (last_c + 1 < r.end) {
        const State seed = st.u(last_c);
        propagate(l, last_c + 1, r.end - 1, seed);
    }
    if (has_right(l)) {
        send_right(l, st.u(r.end - 1));
    }
    for (std::size_t c = first_c; c < last_c; c += m) {
        const State seed = st.u(c);
        propagate(l, c + 1, c + m - 1, seed);
    }
    if (has_left(l)) {
        const State ghost = recv_left(l);
        if (r.begin < first_c) {
            propagate(l, r.begin, first_c - 1, ghost);
        }
    }
}

void Engine::c_relax(std::size_t l) {
    const std::size_t m = hierarchy_->level(l).coarsening;
    if (m == 0) {
        throw std::logic_error("C-relaxation on the coarsest level");
    }
    SpaceTimeFunction& st = levels_[l];
    const IndexRange r = st.range();
    if (r.empty()) {
        return;
    }
    if (has_right(l)) {
        send_right(l, st.u(r.end - 1));
    }
    State ghost;
    if (has_left(l)) {
        ghost = recv_left(l);
    }
    for (std::size_t c = (r.begin + m - 1) / m * m; c < r.end; c += m) {
        if (c == 0) {
            continue;
        }
        const State& prev = c == r.begin ? ghost : st.u(c - 1);
        State next = solve(l, c, prev, st.g(c), prev);
        st.u(c) = std::move(next);
    }
}

void Engine::fcf_relax(std::size_t l) {
    f_relax(l);
    c_relax(l);
    f_relax(l);
}

std::vector<State> Engine::restrict_injection(std::size_t l, std::span<const State> x) const {
    const std::size_t m = hierarchy_->level(l).coarsening;
    if (m == 0) {
        throw std::logic_error("restriction from the coarsest level");
    }
    const IndexRange r = levels_[l].range();
    if (x.size() != r.size()) {
        throw std::invalid_argument("restrict_injection: vector does not match the owned range");
    }
    std::vector<State> out;
    for (std::size_t c = (r.begin + m - 1) / m * m; c < r.end; c += m) {
        out.push_back(x[c - r.begin]);
    }
    return out;
}

std::vector<State> Engine::apply_operator(std::size_t l) {
    SpaceTimeFunction& st = levels_[l];
    const IndexRange r = st.range();
    std::vector<State> out;
    if (r.empty()) {
        return out;
    }
    if (has_right(l)) {
        send_right(l, st.u(r.end - 1));
    }
    State ghost;
    if (has_left(l)) {
        ghost = recv_left(l);
    }
    out.reserve(r.size());
    for (std::size_t j = r.begin; j < r.end; ++j) {
        if (j == 0) {
            out.push_back(st.u(0));
            continue;
        }
        const State& prev = j == r.begin ? ghost : st.u(j - 1);
        out.push_back(operators_[l]->apply_row(j, st.u(j), prev));
    }
    return out;
}

std::vector<State> Engine::residual(std::size_t l) {
    std::vector<State> a = apply_operator(l);
    SpaceTimeFunction& st = levels_[l];
    for (std::size_t k = 0; k < a.size(); ++k) {
        a[k] = model::difference(st.g(st.range().begin + k), a[k]);
    }
    return a;
}

void Engine::form_coarse_problem(std::size_t l) {
    const std::size_t m = hierarchy_->level(l).coarsening;
    if (m == 0) {
        throw std::logic_error("no coarse level below the coarsest");
    }
    const std::size_t cl = l + 1;
    SpaceTimeFunction& fine = levels_[l];
    SpaceTimeFunction& coarse = levels_[cl];
    const IndexRange r = fine.range();
    const IndexRange cr = coarse.range();

    // Fine residual at the owned C-points.
    std::vector<State> res;
    if (!r.empty()) {
        const std::size_t first_c = (r.begin + m - 1) / m * m;
        if (has_right(l)) {
            send_right(l, fine.u(r.end - 1));
        }
        State ghost;
        if (has_left(l)) {
            ghost = recv_left(l);
        }
        for (std::size_t c = first_c; c < r.end; c += m) {
            if (c == 0) {
                res.push_back(model::difference(fine.g(0), fine.u(0)));
                continue;
            }
            const State& prev = c == r.begin ? ghost : fine.u(c - 1);
            res.push_back(model::difference(fine.g(c), operators_[l]->apply_row(c, fine.u(c), prev)));
        }
    }

    // Rows j >= 1 are rates (divided by their level's step). A C-point
    // residual left by F-relaxation is the defect of one fine step, so it
    // enters the coarse rows weighted by dt_l / dt_{l+1}; unweighted, the
    // flux-linkage error would be overcorrected m-fold every cycle.
    const double weight = options_.coarse == CoarseOperator::ideal
                              ? 1.0
                              : hierarchy_->level(l).dt / hierarchy_->level(cl).dt;

    std::vector<State>& ru = restricted_[cl];
    ru.clear();
    for (std::size_t k = cr.begin; k < cr.end; ++k) {
        ru.push_back(fine.u(k * m));
    }
    coarse.u_values() = ru;
    if (cr.empty()) {
        return;
    }

    if (has_right(cl)) {
        send_right(cl, ru.back());
    }
    State ghost;
    if (has_left(cl)) {
        ghost = recv_left(cl);
    }
    for (std::size_t k = cr.begin; k < cr.end; ++k) {
        const std::size_t idx = k - cr.begin;
        State a = k == 0 ? ru[0] : operators_[cl]->apply_row(k, ru[idx], k == cr.begin ? ghost : ru[idx - 1]);
        model::axpy(k == 0 ? 1.0 : weight, res[idx], a);
        coarse.g(k) = std::move(a);
    }
}

void Engine::coarse_solve(std::size_t l) {
    SpaceTimeFunction& st = levels_[l];
    const IndexRange r = st.range();
    const std::size_t nodes = stepper_->model().node_count();
    const std::size_t width = nodes + 1;
    const auto tag = static_cast<std::int32_t>(l);

    if (rank_ != 0) {
        if (r.empty()) {
            return;
        }
        Message out{MessageKind::collective, tag, static_cast<std::int32_t>(r.begin), {}};
        for (std::size_t k = r.begin; k < r.end; ++k) {
            append(out.payload, st.u(k));
            append(out.payload, st.g(k));
        }
        comm_->send(0, std::move(out));
        Message back = comm_->recv(0);
        expect(back, MessageKind::collective, l, r.begin);
        if (back.payload.size() != r.size() * width) {
            throw ProtocolError("coarse solve: scatter payload has wrong size");
        }
        for (std::size_t k = r.begin; k < r.end; ++k) {
            st.u(k) = unflatten(back.payload.data() + (k - r.begin) * width, nodes);
        }
        return;
    }

    const std::size_t points = hierarchy_->level(l).points();
    std::vector<State> u(points);
    std::vector<State> g(points);
    for (std::size_t k = r.begin; k < r.end; ++k) {
        u[k] = st.u(k);
        g[k] = st.g(k);
    }
    for (int w = 1; w < comm_->size(); ++w) {
        const IndexRange wr = layout_->range(l, w);
        if (wr.empty()) {
            continue;
        }
        Message in = comm_->recv(w);
        expect(in, MessageKind::collective, l, wr.begin);
        if (in.payload.size() != 2 * wr.size() * width) {
            throw ProtocolError("coarse solve: gather payload has wrong size");
        }
        for (std::size_t k = wr.begin; k < wr.end; ++k) {
            const double* p = in.payload.data() + 2 * (k - wr.begin) * width;
            u[k] = unflatten(p, nodes);
            g[k] = unflatten(p + width, nodes);
        }
    }

    u[0] = g[0];
    for (std::size_t k = 1; k < points; ++k) {
        State next = solve(l, k, u[k - 1], g[k], u[k]);
        u[k] = std::move(next);
    }

    for (std::size_t k = r.begin; k < r.end; ++k) {
        st.u(k) = u[k];
    }
    for (int w = 1; w < comm_->size(); ++w) {
        const IndexRange wr = layout_->range(l, w);
        if (wr.empty()) {
            continue;
        }
        Message out{MessageKind::collective, tag, static_cast<std::int32_t>(wr.begin), {}};
        for (std::size_t k = wr.begin; k < wr.end; ++k) {
            append(out.payload, u[k]);
        }
        comm_->send(w, std::move(out));
    }
}

void Engine::correct_ideal(std::size_t l) {
    const std::size_t m = hierarchy_->level(l).coarsening;
    if (m == 0) {
        throw std::logic_error("no coarse correction on the coarsest level");
    }
    const std::size_t cl = l + 1;
    SpaceTimeFunction& fine = levels_[l];
    SpaceTimeFunction& coarse = levels_[cl];
    const IndexRange cr = coarse.range();
    for (std::size_t k = cr.begin; k < cr.end; ++k) {
        const State e = model::difference(coarse.u(k), restricted_[cl][k - cr.begin]);
        model::axpy(1.0, e, fine.u(k * m));
    }
    f_relax(l);
}

void Engine::v_cycle(std::size_t l) {
    ++visits_.at(l);
    if (hierarchy_->level(l).is_coarsest()) {
        coarse_solve(l);
        return;
    }
    fcf_relax(l);
    form_coarse_problem(l);
    v_cycle(l + 1);
    correct_ideal(l);
}

void Engine::f_cycle(std::size_t l) {
    ++visits_.at(l);
    if (hierarchy_->level(l).is_coarsest()) {
        coarse_solve(l);
        return;
    }
    fcf_relax(l);
    form_coarse_problem(l);
    f_cycle(l + 1);
    correct_ideal(l);
    v_cycle(l);
}

double Engine::residual_norm() {
    const std::vector<State> res = residual(0);
    const IndexRange r = levels_[0].range();
    std::vector<double> squares;
    squares.reserve(res.size());
    for (std::size_t j = r.begin; j < r.end; ++j) {
        if (j > 0) {
            squares.push_back(model::free_norm_squared(res[j - r.begin]));
        }
    }
    std::vector<double> local = options_.deterministic_reduction
                                    ? std::move(squares)
                                    : std::vector<double>{pairwise_sum(squares.data(), squares.size())};

    double total = 0.0;
    if (rank_ != 0) {
        comm_->send(0, Message{MessageKind::collective, 0, static_cast<std::int32_t>(r.begin), std::move(local)});
        Message back = comm_->recv(0);
        expect(back, MessageKind::collective, 0, 0);
        total = back.payload.at(0);
    } else {
        std::vector<double> all = std::move(local);
        for (int w = 1; w < comm_->size(); ++w) {
            Message in = comm_->recv(w);
            expect(in, MessageKind::collective, 0, layout_->range(0, w).begin);
            all.insert(all.end(), in.payload.begin(), in.payload.end());
        }
        total = options_.deterministic_reduction ? pairwise_sum(all.data(), all.size()) : [&] {
            double s = 0.0;
            for (double v : all) {
                s += v;
            }
            return s;
        }();
        for (int w = 1; w < comm_->size(); ++w) {
            comm_->send(w, Message{MessageKind::collective, 0, 0, {total}});
        }
    }
    return std::sqrt(total);
}

}  // namespace eddymgrit::mgrit
