#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "swarmstat/gaussian.hpp"
#include "swarmstat/rng.hpp"
#include "swarmstat/scenario.hpp"

namespace swarmstat {

/// Track identity: (birth time step, disambiguator within that step).
struct Label {
    int step = 0;
    int index = 0;

    friend bool operator==(const Label&, const Label&) = default;
    friend auto operator<=>(const Label&, const Label&) = default;
};

/// One labeled track: existence probability plus spatial mixture.
struct BernoulliTrack {
    Label label;
    double r = 0.0;
    GaussianMixture p;
};

/// One global association history with its probability. `labels` is kept
/// sorted; `history` records, per member label, the measurement index chosen
/// at each update (-1 for a missed detection).
struct GlmbHypothesis {
    double weight = 0.0;
    std::vector<Label> labels;
    std::map<Label, std::vector<int>> history;
};

/// The filter's full belief state: a marginal track table plus the weighted
/// hypothesis set over label subsets. Hypothesis weights sum to one, and each
/// track's existence probability equals the total weight of the hypotheses
/// containing its label.
struct GlmbDensity {
    std::map<Label, BernoulliTrack> tracks;
    std::vector<GlmbHypothesis> hypotheses;
};

struct BirthComponent {
    double r = 0.0;
    GaussianMixture p;
};
using BirthModel = std::vector<BirthComponent>;

struct MeasurementScan {
    int time_index = 0;
    std::vector<Eigen::Vector2d> points;
    std::vector<std::string> truth_tags;  // scoring only; the filter never reads these
};

// ---------------------------------------------------------------------------
// Set densities

/// Empty set -> 1-r; singleton {x} -> r p(x); larger sets -> 0.
double bernoulli_density(const BernoulliTrack& track, const std::vector<Eigen::VectorXd>& x_set);

/// Union of M independent Bernoulli components, evaluated by summing over all
/// injective component-to-point assignments.
double multi_bernoulli_density(const std::vector<std::pair<double, GaussianMixture>>& params,
                               const std::vector<Eigen::VectorXd>& x_set);

/// Labeled density: distinct-label indicator times the hypothesis weight of
/// the label set times the per-label spatial densities.
double glmb_density(const GlmbDensity& density,
                    const std::vector<std::pair<Label, Eigen::VectorXd>>& x_set);

/// Expands independent Bernoulli tracks into the explicit hypothesis table
/// (every label subset, weight = prod r / prod (1-r) form). Intended for
/// small track counts; throws above 20 tracks.
GlmbDensity lmb_expand(const std::vector<BernoulliTrack>& tracks);

/// Density with no tracks and a single certain empty hypothesis.
GlmbDensity empty_density();

std::vector<double> cardinality_distribution(const GlmbDensity& density);

// ---------------------------------------------------------------------------
// Filter recursion

/// Survival/birth expansion. Track mixtures move through the motion model,
/// each parent hypothesis branches over label-survival and birth-activation
/// combinations, and structurally identical children merge. Birth tracks get
/// labels (step, k). `child_floor` drops children lighter than that fraction
/// of their parent (0 keeps the expansion exact).
GlmbDensity glmb_predict(const GlmbDensity& density, const Eigen::MatrixXd& f,
                         const Eigen::MatrixXd& q, double p_survival, const BirthModel& birth,
                         int step, double child_floor = 0.0);

struct AssocOptions {
    int exhaustive_limit = 256;     // max joint associations enumerated exactly
    int ranked_k = 24;              // children per hypothesis when ranked
    double gate_mahalanobis2 = 0.0; // component gate; 0 disables gating
    double max_coast_pos_var = 0.0; // lost-track association cutoff; 0 disables
};

/// Measurement update. Each hypothesis branches over the injective
/// label-to-measurement association maps; a missed label contributes (1-pD),
/// a matched label pD times its mixture likelihood, and each unexplained
/// measurement one factor of the clutter intensity (clutter_rate / area).
/// Small problems are enumerated exhaustively in a canonical order; larger
/// ones fall back to the ranked_k cheapest associations (Murty).
GlmbDensity glmb_update(const GlmbDensity& density, const MeasurementScan& scan, double p_detect,
                        double clutter_rate, const Eigen::MatrixXd& h, const Eigen::Matrix2d& r,
                        const MissionArea& area, const AssocOptions& options = {});

/// Drops hypotheses below w_min, keeps the heaviest h_max, renormalizes, then
/// prunes and caps each surviving track's mixture. At least one hypothesis
/// (the best) always survives. Orphaned tracks leave the table.
GlmbDensity prune_hypotheses(const GlmbDensity& density, double w_min, int h_max, double gm_min,
                             int gm_cap);

struct Extraction {
    Label label;
    Eigen::VectorXd state;
    Eigen::Vector2d position;
};

/// MAP-cardinality extraction: the most probable cardinality (ties toward
/// fewer objects), the heaviest hypothesis of that cardinality, and each
/// member track's heaviest mixture component mean.
std::vector<Extraction> extract_states(const GlmbDensity& density);

// ---------------------------------------------------------------------------
// Measurement synthesis

/// Poisson(rate) points, i.i.d. uniform over the area; per point the draw
/// order is x then y.
std::vector<Eigen::Vector2d> generate_clutter(double rate, const MissionArea& area, Rng& rng);

struct Detection {
    int object_index = -1;
    Eigen::Vector2d point{0.0, 0.0};
};

/// Each object, in input order, draws detection with probability p_detect and
/// (when detected) one Box-Muller noise pair shaped by the covariance.
std::vector<Detection> generate_measurements(const std::vector<Eigen::Vector2d>& positions,
                                             double p_detect, const Eigen::Matrix2d& noise_cov,
                                             Rng& rng);

/// One single-component birth per known start location; state is
/// [x, y, vx, vy]. Velocities default to zero when not supplied.
BirthModel birth_from_positions(const std::vector<Eigen::Vector2d>& positions, double r,
                                double pos_var, double vel_var,
                                const std::vector<Eigen::Vector2d>& velocities = {});

// ---------------------------------------------------------------------------
// Two-instance filter front end

struct GlmbFilterConfig {
    Eigen::MatrixXd f;  // per-tick motion model
    Eigen::MatrixXd q;
    Eigen::MatrixXd h;  // position measurement model
    Eigen::Matrix2d r = Eigen::Matrix2d::Identity();
    double p_detect = 0.98;
    double clutter_rate = 1.0;  // rate handed to the filter, not the truth rate
    MissionArea area;
    std::vector<Eigen::Vector2d> birth_positions;
    std::vector<Eigen::Vector2d> birth_velocities;  // optional, matches positions
    GlmbSettings settings;
};

/// predict -> prune -> update -> prune per tick; birth mass is
/// birth_r_init on the first tick and birth_r_recurring afterwards.
class GlmbFilter {
public:
    explicit GlmbFilter(GlmbFilterConfig config);

    void step(const MeasurementScan& scan);
    std::vector<Extraction> extract() const { return extract_states(density_); }
    const GlmbDensity& density() const { return density_; }
    int steps_run() const { return step_; }

private:
    GlmbFilterConfig cfg_;
    GlmbDensity density_;
    int step_ = 0;
};

}  // namespace swarmstat
