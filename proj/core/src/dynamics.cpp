#include "swarmstat/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "swarmstat/errors.hpp"

namespace swarmstat {

DiscreteModel discretize(const LinearModel& model) {
    if (!(model.dt > 0.0)) throw std::invalid_argument("discretize: dt must be > 0");
    // Exact ZOH through the augmented exponential [[A, B], [0, 0]] * dt.
    Eigen::Matrix<double, 7, 7> block = Eigen::Matrix<double, 7, 7>::Zero();
    block.topLeftCorner<5, 5>() = model.a;
    block.topRightCorner<5, 2>() = model.b;
    const Eigen::Matrix<double, 7, 7> expm = (block * model.dt).exp();
    DiscreteModel d;
    d.ad = expm.topLeftCorner<5, 5>();
    d.bd = expm.topRightCorner<5, 2>();
    d.dt = model.dt;
    return d;
}

Eigen::MatrixXd solve_dare(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                           const Eigen::MatrixXd& q, const Eigen::MatrixXd& r) {
    const auto n = a.rows();
    if (a.cols() != n || b.rows() != n || q.rows() != n || q.cols() != n ||
        r.rows() != b.cols() || r.cols() != b.cols()) {
        throw std::invalid_argument("solve_dare: dimension mismatch");
    }
    Eigen::LLT<Eigen::MatrixXd> r_llt(r);
    if (r_llt.info() != Eigen::Success) {
        throw RiccatiError("solve_dare: R must be positive definite");
    }

    // Structure-preserving doubling: quadratically convergent fixed point in
    // (A_k, G_k, H_k); H_k tends to the stabilizing solution.
    Eigen::MatrixXd a_k = a;
    Eigen::MatrixXd g_k = b * r_llt.solve(b.transpose());
    Eigen::MatrixXd h_k = q;
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
    for (int iter = 0; iter < 120; ++iter) {
        const Eigen::MatrixXd w = eye + g_k * h_k;
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(w);
        const Eigen::MatrixXd w_inv_a = lu.solve(a_k);
        const Eigen::MatrixXd w_inv_g = lu.solve(g_k);
        const Eigen::MatrixXd a_next = a_k * w_inv_a;
        const Eigen::MatrixXd g_next = g_k + a_k * w_inv_g * a_k.transpose();
        const Eigen::MatrixXd h_next = h_k + w_inv_a.transpose() * (h_k * a_k);
        const double delta = (h_next - h_k).cwiseAbs().maxCoeff();
        const double scale = std::max(1.0, h_next.cwiseAbs().maxCoeff());
        a_k = a_next;
        g_k = g_next;
        h_k = h_next;
        if (delta <= 1e-14 * scale) {
            return 0.5 * (h_k + h_k.transpose());
        }
    }
    throw RiccatiError("solve_dare: doubling iteration did not converge");
}

LqrGain lqr_gain(const LinearModel& model, const Matrix5d& q, const Eigen::Matrix2d& r) {
    const DiscreteModel d = discretize(model);
    const Eigen::MatrixXd p = solve_dare(d.ad, d.bd, q, r);
    const Eigen::Matrix2d denom = r + d.bd.transpose() * p * d.bd;
    LqrGain gain;
    gain.k = denom.ldlt().solve(d.bd.transpose() * p * d.ad);
    const Eigen::Matrix<std::complex<double>, 5, 1> eigs =
        Eigen::EigenSolver<Matrix5d>(d.ad - d.bd * gain.k).eigenvalues();
    for (int i = 0; i < 5; ++i) {
        if (std::abs(eigs(i)) >= 1.0) {
            throw RiccatiError("lqr_gain: closed loop is not stable");
        }
    }
    return gain;
}

double wrap_angle(double angle) {
    double w = std::remainder(angle, kTwoPi);  // [-pi, pi]
    if (w <= -0.5 * kTwoPi) w += kTwoPi;
    return w;
}

double heading_command(const Eigen::Vector2d& agent_pos, const Eigen::Vector2d& waypoint) {
    const Eigen::Vector2d delta = waypoint - agent_pos;
    if (delta.x() == 0.0 && delta.y() == 0.0) {
        throw std::invalid_argument("heading_command: agent position coincides with waypoint");
    }
    return wrap_angle(std::atan2(delta.y(), delta.x()));
}

AgentState step_agent(const AgentState& state, double heading_cmd, const DiscreteModel& model,
                      const LqrGain& gain, double forward_speed) {
    if (!state.alive) throw std::invalid_argument("step_agent: agent is dead");

    Vector5d err = state.lateral;
    err(4) = wrap_angle(state.lateral(4) - heading_cmd);  // shortest-angle error
    const Eigen::Vector2d input = -(gain.k * err);

    AgentState next = state;
    next.lateral = model.ad * state.lateral + model.bd * input;
    next.lateral(4) = wrap_angle(next.lateral(4));

    const double psi = state.lateral(4);
    const double v_lat = state.lateral(0);
    const Eigen::Vector2d world_vel{forward_speed * std::cos(psi) - v_lat * std::sin(psi),
                                    forward_speed * std::sin(psi) + v_lat * std::cos(psi)};
    next.position = state.position + model.dt * world_vel;
    return next;
}

TargetState step_target(const TargetState& state, double dt, const Eigen::Vector2d& accel) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_target: dt must be > 0");
    TargetState next = state;
    next.position = state.position + dt * state.velocity + (0.5 * dt * dt) * accel;
    next.velocity = state.velocity + dt * accel;
    return next;
}

GuidanceState advance_waypoint(GuidanceState guidance, const Eigen::Vector2d& agent_pos,
                               double threshold) {
    if (!(threshold > 0.0)) throw std::invalid_argument("advance_waypoint: threshold must be > 0");
    if (!guidance.has_active()) {
        guidance.mission_complete = true;
        return guidance;
    }
    const double dist = (guidance.waypoints[guidance.active] - agent_pos).norm();
    if (dist < threshold) {
        ++guidance.active;
        if (guidance.active == guidance.waypoints.size()) guidance.mission_complete = true;
    }
    return guidance;
}

std::vector<AgentState> death_process(std::vector<AgentState> agents, double p, Rng& rng) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("death_process: p must be in [0, 1]");
    // Draw order is ascending id; only living agents draw.
    std::vector<AgentState*> order;
    order.reserve(agents.size());
    for (auto& a : agents) order.push_back(&a);
    std::sort(order.begin(), order.end(),
              [](const AgentState* x, const AgentState* y) { return x->id < y->id; });
    for (AgentState* a : order) {
        if (a->alive && rng.bernoulli(p)) a->alive = false;
    }
    return agents;
}

}  // namespace swarmstat
