#pragma once

#include <vector>

#include <Eigen/Dense>

namespace swarmstat {

struct Gaussian {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
};

/// Weighted sum of Gaussians; weights are kept normalized to one.
struct GaussianMixture {
    struct Component {
        double weight = 0.0;
        Gaussian g;
    };
    std::vector<Component> components;

    void normalize();
    double weight_sum() const;
};

/// Multivariate normal density. Throws std::invalid_argument on dimension
/// mismatch and std::runtime_error when the covariance is not positive
/// definite.
double gaussian_pdf(const Gaussian& g, const Eigen::VectorXd& x);

double gm_eval(const GaussianMixture& gm, const Eigen::VectorXd& x);

Gaussian kalman_predict(const Gaussian& g, const Eigen::MatrixXd& f, const Eigen::MatrixXd& q);

struct KalmanUpdate {
    Gaussian posterior;
    double likelihood = 0.0;  // marginal measurement density N(z; Hm, HPH'+R)
};

KalmanUpdate kalman_update(const Gaussian& g, const Eigen::VectorXd& z, const Eigen::MatrixXd& h,
                           const Eigen::MatrixXd& r);

/// Constant-velocity transition and white-acceleration process noise for a
/// [x, y, vx, vy] state.
Eigen::Matrix4d cv_transition(double dt);
Eigen::Matrix4d cv_process_noise(double dt, double intensity);

}  // namespace swarmstat
