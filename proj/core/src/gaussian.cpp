#include "swarmstat/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace swarmstat {

void GaussianMixture::normalize() {
    const double sum = weight_sum();
    if (sum <= 0.0) throw std::runtime_error("GaussianMixture: non-positive weight sum");
    for (auto& c : components) c.weight /= sum;
}

double GaussianMixture::weight_sum() const {
    double sum = 0.0;
    for (const auto& c : components) sum += c.weight;
    return sum;
}

double gaussian_pdf(const Gaussian& g, const Eigen::VectorXd& x) {
    const auto n = g.mean.size();
    if (x.size() != n || g.cov.rows() != n || g.cov.cols() != n) {
        throw std::invalid_argument("gaussian_pdf: dimension mismatch");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(g.cov);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("gaussian_pdf: covariance is not positive definite");
    }
    const Eigen::VectorXd diff = x - g.mean;
    const Eigen::VectorXd sol = llt.matrixL().solve(diff);
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) log_det += std::log(llt.matrixL()(i, i));
    const double log_pdf = -0.5 * sol.squaredNorm() - log_det -
                           0.5 * static_cast<double>(n) * std::log(2.0 * M_PI);
    return std::exp(log_pdf);
}

double gm_eval(const GaussianMixture& gm, const Eigen::VectorXd& x) {
    double value = 0.0;
    for (const auto& c : gm.components) value += c.weight * gaussian_pdf(c.g, x);
    return value;
}

Gaussian kalman_predict(const Gaussian& g, const Eigen::MatrixXd& f, const Eigen::MatrixXd& q) {
    if (f.cols() != g.mean.size() || q.rows() != f.rows() || q.cols() != f.rows()) {
        throw std::invalid_argument("kalman_predict: dimension mismatch");
    }
    Gaussian out;
    out.mean = f * g.mean;
    out.cov = f * g.cov * f.transpose() + q;
    out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
    return out;
}

KalmanUpdate kalman_update(const Gaussian& g, const Eigen::VectorXd& z, const Eigen::MatrixXd& h,
                           const Eigen::MatrixXd& r) {
    if (h.cols() != g.mean.size() || z.size() != h.rows() || r.rows() != h.rows() ||
        r.cols() != h.rows()) {
        throw std::invalid_argument("kalman_update: dimension mismatch");
    }
    const Eigen::VectorXd z_pred = h * g.mean;
    Eigen::MatrixXd s = h * g.cov * h.transpose() + r;
    s = 0.5 * (s + s.transpose()).eval();
    Eigen::LLT<Eigen::MatrixXd> llt(s);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("kalman_update: innovation covariance is not positive definite");
    }
    const Eigen::MatrixXd gain = llt.solve(h * g.cov).transpose();

    KalmanUpdate out;
    out.posterior.mean = g.mean + gain * (z - z_pred);
    const Eigen::MatrixXd joseph =
        Eigen::MatrixXd::Identity(g.mean.size(), g.mean.size()) - gain * h;
    out.posterior.cov = joseph * g.cov * joseph.transpose() + gain * r * gain.transpose();
    out.posterior.cov = 0.5 * (out.posterior.cov + out.posterior.cov.transpose()).eval();
    out.likelihood = gaussian_pdf(Gaussian{z_pred, s}, z);
    return out;
}

Eigen::Matrix4d cv_transition(double dt) {
    Eigen::Matrix4d f = Eigen::Matrix4d::Identity();
    f(0, 2) = dt;
    f(1, 3) = dt;
    return f;
}

Eigen::Matrix4d cv_process_noise(double dt, double intensity) {
    const double dt2 = dt * dt;
    const double dt3 = dt2 * dt;
    Eigen::Matrix4d q = Eigen::Matrix4d::Zero();
    q(0, 0) = q(1, 1) = intensity * dt3 / 3.0;
    q(2, 2) = q(3, 3) = intensity * dt;
    q(0, 2) = q(2, 0) = intensity * dt2 / 2.0;
    q(1, 3) = q(3, 1) = intensity * dt2 / 2.0;
    return q;
}

}  // namespace swarmstat
