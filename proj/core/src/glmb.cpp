#include "swarmstat/glmb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swarmstat/assignment.hpp"

namespace swarmstat {

namespace {

// Canonical hypothesis order: weight descending, then fewer labels, then
// label/history lexicographic. Used by pruning so downstream tie-breaks are
// replayable.
bool hypothesis_before(const GlmbHypothesis& a, const GlmbHypothesis& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.labels.size() != b.labels.size()) return a.labels.size() < b.labels.size();
    if (a.labels != b.labels) return a.labels < b.labels;
    return a.history < b.history;
}

double marginal_existence(const std::vector<GlmbHypothesis>& hyps, const Label& label) {
    double r = 0.0;
    for (const auto& h : hyps) {
        if (std::binary_search(h.labels.begin(), h.labels.end(), label)) r += h.weight;
    }
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Set densities

double bernoulli_density(const BernoulliTrack& track, const std::vector<Eigen::VectorXd>& x_set) {
    if (x_set.empty()) return 1.0 - track.r;
    if (x_set.size() == 1) return track.r * gm_eval(track.p, x_set[0]);
    return 0.0;
}

double multi_bernoulli_density(const std::vector<std::pair<double, GaussianMixture>>& params,
                               const std::vector<Eigen::VectorXd>& x_set) {
    const int m = static_cast<int>(params.size());
    const int n = static_cast<int>(x_set.size());
    if (n > m) return 0.0;

    // Sum over injective component-to-point assignments, each term the product
    // of r_i p_i(x_j) for chosen components and (1 - r_k) for the rest. This
    // equals the ratio form of the density without dividing by (1 - r).
    double total = 0.0;
    std::vector<int> chosen(n, -1);
    std::vector<char> used(m, 0);
    const auto recurse = [&](const auto& self, int point) -> void {
        if (point == n) {
            double term = 1.0;
            for (int j = 0; j < n; ++j) {
                term *= params[chosen[j]].first * gm_eval(params[chosen[j]].second, x_set[j]);
            }
            for (int k = 0; k < m; ++k) {
                if (!used[k]) term *= 1.0 - params[k].first;
            }
            total += term;
            return;
        }
        for (int k = 0; k < m; ++k) {
            if (used[k]) continue;
            used[k] = 1;
            chosen[point] = k;
            self(self, point + 1);
            used[k] = 0;
        }
    };
    recurse(recurse, 0);
    return total;
}

double glmb_density(const GlmbDensity& density,
                    const std::vector<std::pair<Label, Eigen::VectorXd>>& x_set) {
    std::vector<Label> labels;
    labels.reserve(x_set.size());
    for (const auto& [label, x] : x_set) labels.push_back(label);
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
        return 0.0;  // distinct-label indicator
    }

    double weight = 0.0;
    for (const auto& h : density.hypotheses) {
        if (h.labels == labels) weight += h.weight;
    }
    if (weight == 0.0) return 0.0;

    double spatial = 1.0;
    for (const auto& [label, x] : x_set) {
        const auto it = density.tracks.find(label);
        if (it == density.tracks.end()) return 0.0;
        spatial *= gm_eval(it->second.p, x);
    }
    return weight * spatial;
}

GlmbDensity empty_density() {
    GlmbDensity d;
    d.hypotheses.push_back(GlmbHypothesis{1.0, {}, {}});
    return d;
}

GlmbDensity lmb_expand(const std::vector<BernoulliTrack>& tracks) {
    if (tracks.size() > 20) throw std::invalid_argument("lmb_expand: too many tracks");
    std::vector<BernoulliTrack> sorted = tracks;
    std::sort(sorted.begin(), sorted.end(),
              [](const BernoulliTrack& a, const BernoulliTrack& b) { return a.label < b.label; });

    GlmbDensity d;
    const int n = static_cast<int>(sorted.size());
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        double w = 1.0;
        GlmbHypothesis h;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                w *= sorted[i].r;
                h.labels.push_back(sorted[i].label);
                h.history.emplace(sorted[i].label, std::vector<int>{});
            } else {
                w *= 1.0 - sorted[i].r;
            }
        }
        if (w == 0.0) continue;
        h.weight = w;
        d.hypotheses.push_back(std::move(h));
    }
    for (const auto& t : sorted) {
        const double r = marginal_existence(d.hypotheses, t.label);
        if (r > 0.0) {
            BernoulliTrack copy = t;
            copy.r = r;
            d.tracks.emplace(t.label, std::move(copy));
        }
    }
    return d;
}

std::vector<double> cardinality_distribution(const GlmbDensity& density) {
    std::size_t max_n = 0;
    for (const auto& h : density.hypotheses) max_n = std::max(max_n, h.labels.size());
    std::vector<double> dist(max_n + 1, 0.0);
    for (const auto& h : density.hypotheses) dist[h.labels.size()] += h.weight;
    return dist;
}

// ---------------------------------------------------------------------------
// Prediction

GlmbDensity glmb_predict(const GlmbDensity& density, const Eigen::MatrixXd& f,
                         const Eigen::MatrixXd& q, double p_survival, const BirthModel& birth,
                         int step, double child_floor) {
    if (p_survival < 0.0 || p_survival > 1.0) {
        throw std::invalid_argument("glmb_predict: p_survival must be in [0, 1]");
    }

    // Motion-model push for surviving tracks.
    std::map<Label, GaussianMixture> predicted;
    for (const auto& [label, track] : density.tracks) {
        GaussianMixture gm = track.p;
        for (auto& comp : gm.components) comp.g = kalman_predict(comp.g, f, q);
        predicted.emplace(label, std::move(gm));
    }

    std::vector<Label> birth_labels;
    for (std::size_t k = 0; k < birth.size(); ++k) {
        const Label label{step, static_cast<int>(k)};
        if (density.tracks.contains(label)) {
            throw std::logic_error("glmb_predict: birth label collides with a live track");
        }
        birth_labels.push_back(label);
    }

    // Branch every hypothesis over survival and birth combinations; children
    // that coincide in labels and history merge by weight.
    using ChildKey = std::pair<std::vector<Label>, std::map<Label, std::vector<int>>>;
    std::map<ChildKey, double> children;
    const int n_birth = static_cast<int>(birth.size());
    for (const auto& h : density.hypotheses) {
        const int n_live = static_cast<int>(h.labels.size());
        for (std::uint32_t smask = 0; smask < (1u << n_live); ++smask) {
            double w_s = h.weight;
            for (int i = 0; i < n_live; ++i) {
                w_s *= (smask & (1u << i)) ? p_survival : 1.0 - p_survival;
            }
            if (w_s == 0.0 || w_s < child_floor * h.weight) continue;
            for (std::uint32_t bmask = 0; bmask < (1u << n_birth); ++bmask) {
                double w = w_s;
                for (int b = 0; b < n_birth; ++b) {
                    w *= (bmask & (1u << b)) ? birth[b].r : 1.0 - birth[b].r;
                }
                if (w == 0.0 || w < child_floor * h.weight) continue;

                ChildKey key;
                for (int i = 0; i < n_live; ++i) {
                    if (!(smask & (1u << i))) continue;
                    key.first.push_back(h.labels[i]);
                    key.second.emplace(h.labels[i], h.history.at(h.labels[i]));
                }
                for (int b = 0; b < n_birth; ++b) {
                    if (!(bmask & (1u << b))) continue;
                    key.first.push_back(birth_labels[b]);
                    key.second.emplace(birth_labels[b], std::vector<int>{});
                }
                std::sort(key.first.begin(), key.first.end());
                children[std::move(key)] += w;
            }
        }
    }
    if (children.empty()) {
        throw std::logic_error("glmb_predict: expansion produced no children (floor too high)");
    }

    double total = 0.0;
    for (const auto& [key, w] : children) total += w;

    GlmbDensity out;
    for (auto& [key, w] : children) {
        GlmbHypothesis h;
        h.weight = w / total;
        h.labels = key.first;
        h.history = key.second;
        out.hypotheses.push_back(std::move(h));
    }
    for (const auto& [label, gm] : predicted) {
        const double r = marginal_existence(out.hypotheses, label);
        if (r > 0.0) out.tracks.emplace(label, BernoulliTrack{label, r, gm});
    }
    for (int b = 0; b < n_birth; ++b) {
        const double r = marginal_existence(out.hypotheses, birth_labels[b]);
        if (r > 0.0) out.tracks.emplace(birth_labels[b], BernoulliTrack{birth_labels[b], r, birth[b].p});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Update

namespace {

struct MeasCache {
    double eta = 0.0;                   // mixture likelihood of this pairing
    std::vector<double> comp_like;      // per prior component: w_i * N_i(z)
    std::vector<Gaussian> comp_post;    // per prior component posterior
};

struct ChildDraft {
    int parent = -1;
    std::vector<int> assoc;  // per label of the parent hypothesis; -1 = missed
    double weight = 0.0;
};

// Weight of one association in canonical arithmetic order: label factors
// ascending, then the clutter factor for unexplained measurements.
double assoc_weight(double parent_w, const std::vector<int>& assoc, double p_detect,
                    const std::vector<const MeasCache*>& caches, double kappa, int n_meas) {
    double w = parent_w;
    int matched = 0;
    for (std::size_t k = 0; k < assoc.size(); ++k) {
        if (assoc[k] < 0) {
            w *= 1.0 - p_detect;
        } else {
            w *= p_detect * caches[k * static_cast<std::size_t>(n_meas) +
                                   static_cast<std::size_t>(assoc[k])]
                                ->eta;
            ++matched;
        }
    }
    return w * std::pow(kappa, n_meas - matched);
}

}  // namespace

GlmbDensity glmb_update(const GlmbDensity& density, const MeasurementScan& scan, double p_detect,
                        double clutter_rate, const Eigen::MatrixXd& h, const Eigen::Matrix2d& r,
                        const MissionArea& area, const AssocOptions& options) {
    if (p_detect < 0.0 || p_detect > 1.0) {
        throw std::invalid_argument("glmb_update: p_detect must be in [0, 1]");
    }
    if (clutter_rate < 0.0) throw std::invalid_argument("glmb_update: clutter_rate must be >= 0");
    const int m = static_cast<int>(scan.points.size());
    const double kappa = clutter_rate / area.size();

    // Likelihood/posterior cache per (track, measurement).
    std::map<Label, std::vector<MeasCache>> cache;
    for (const auto& [label, track] : density.tracks) {
        std::vector<MeasCache> row(m);
        for (int j = 0; j < m; ++j) {
            MeasCache& mc = row[j];
            mc.comp_like.resize(track.p.components.size(), 0.0);
            mc.comp_post.resize(track.p.components.size());
            for (std::size_t i = 0; i < track.p.components.size(); ++i) {
                const auto& comp = track.p.components[i];
                if (options.max_coast_pos_var > 0.0 &&
                    0.5 * (comp.g.cov(0, 0) + comp.g.cov(1, 1)) > options.max_coast_pos_var) {
                    continue;  // lost track; it may only miss and fade
                }
                const KalmanUpdate ku = kalman_update(comp.g, scan.points[j], h, r);
                if (options.gate_mahalanobis2 > 0.0) {
                    const Eigen::VectorXd innov = scan.points[j] - h * comp.g.mean;
                    const Eigen::MatrixXd s = h * comp.g.cov * h.transpose() + r;
                    const double d2 = innov.dot(s.ldlt().solve(innov));
                    if (d2 > options.gate_mahalanobis2) continue;  // component outside gate
                }
                mc.comp_like[i] = comp.weight * ku.likelihood;
                mc.comp_post[i] = ku.posterior;
                mc.eta += mc.comp_like[i];
            }
        }
        cache.emplace(label, std::move(row));
    }

    // Children per parent hypothesis: exhaustive enumeration in canonical
    // order (miss first, then measurements ascending) while small, ranked
    // assignments otherwise.
    std::vector<ChildDraft> children;
    for (std::size_t hi = 0; hi < density.hypotheses.size(); ++hi) {
        const GlmbHypothesis& parent = density.hypotheses[hi];
        const int n_labels = static_cast<int>(parent.labels.size());
        std::vector<const MeasCache*> caches(static_cast<std::size_t>(n_labels) *
                                             static_cast<std::size_t>(std::max(m, 1)));
        for (int k = 0; k < n_labels; ++k) {
            const auto& row = cache.at(parent.labels[k]);
            for (int j = 0; j < m; ++j) {
                caches[static_cast<std::size_t>(k) * static_cast<std::size_t>(m) +
                       static_cast<std::size_t>(j)] = &row[j];
            }
        }
        const auto eta_of = [&](int k, int j) {
            return caches[static_cast<std::size_t>(k) * static_cast<std::size_t>(m) +
                          static_cast<std::size_t>(j)]
                ->eta;
        };

        std::vector<ChildDraft> local;
        bool exhausted_ok = true;
        {
            std::vector<int> assoc(n_labels, -1);
            std::vector<char> used(std::max(m, 1), 0);
            const auto dfs = [&](const auto& self, int k) -> void {
                if (!exhausted_ok) return;
                if (k == n_labels) {
                    if (static_cast<int>(local.size()) >= options.exhaustive_limit) {
                        exhausted_ok = false;
                        return;
                    }
                    ChildDraft c;
                    c.parent = static_cast<int>(hi);
                    c.assoc = assoc;
                    c.weight = assoc_weight(parent.weight, assoc, p_detect, caches, kappa, m);
                    if (c.weight != 0.0) local.push_back(std::move(c));
                    return;
                }
                if (p_detect < 1.0) {
                    assoc[k] = -1;
                    self(self, k + 1);
                }
                for (int j = 0; j < m && exhausted_ok; ++j) {
                    if (used[j] || !(p_detect > 0.0) || eta_of(k, j) == 0.0) continue;
                    used[j] = 1;
                    assoc[k] = j;
                    self(self, k + 1);
                    used[j] = 0;
                }
                assoc[k] = -1;
            };
            dfs(dfs, 0);
        }

        if (!exhausted_ok) {
            // Ranked fallback: rows are labels, columns are the measurements
            // followed by one private miss slot per label.
            local.clear();
            if (kappa <= 0.0) {
                throw std::logic_error(
                    "glmb_update: association problem too large for exhaustive enumeration "
                    "with zero clutter intensity");
            }
            const double log_kappa = std::log(kappa);
            Eigen::MatrixXd costs(n_labels, m + n_labels);
            costs.setConstant(kUnreachable);
            for (int k = 0; k < n_labels; ++k) {
                for (int j = 0; j < m; ++j) {
                    const double eta = eta_of(k, j);
                    if (p_detect > 0.0 && eta > 0.0) {
                        costs(k, j) = -std::log(p_detect * eta) + log_kappa;
                    }
                }
                if (p_detect < 1.0) costs(k, m + k) = -std::log(1.0 - p_detect);
            }
            for (const RankedAssignment& ranked : murty_best_k(costs, options.ranked_k)) {
                ChildDraft c;
                c.parent = static_cast<int>(hi);
                c.assoc.resize(n_labels);
                for (int k = 0; k < n_labels; ++k) {
                    c.assoc[k] = ranked.row_to_col[k] < m ? ranked.row_to_col[k] : -1;
                }
                c.weight = assoc_weight(parent.weight, c.assoc, p_detect, caches, kappa, m);
                if (c.weight != 0.0) local.push_back(std::move(c));
            }
        }
        children.insert(children.end(), local.begin(), local.end());
    }

    // An all-zero update means the scan is impossible under the model (for
    // example pD = 1 with fewer measurements than certain tracks). Treat it
    // as uninformative rather than leaving the density undefined.
    double total = 0.0;
    for (const auto& c : children) total += c.weight;
    if (children.empty() || total <= 0.0) {
        children.clear();
        for (std::size_t hi = 0; hi < density.hypotheses.size(); ++hi) {
            ChildDraft c;
            c.parent = static_cast<int>(hi);
            c.assoc.assign(density.hypotheses[hi].labels.size(), -1);
            c.weight = density.hypotheses[hi].weight;
            children.push_back(std::move(c));
        }
        total = 0.0;
        for (const auto& c : children) total += c.weight;
    }

    GlmbDensity out;
    out.hypotheses.reserve(children.size());
    // Per-label association mass, accumulated in child order: index 0 is the
    // missed branch, j+1 the branch matched to measurement j.
    std::map<Label, std::vector<double>> branch_mass;
    for (const auto& c : children) {
        const GlmbHypothesis& parent = density.hypotheses[c.parent];
        GlmbHypothesis child;
        child.weight = c.weight / total;
        child.labels = parent.labels;
        child.history = parent.history;
        for (std::size_t k = 0; k < child.labels.size(); ++k) {
            child.history[child.labels[k]].push_back(c.assoc[k]);
            auto& mass = branch_mass[child.labels[k]];
            if (mass.empty()) mass.assign(static_cast<std::size_t>(m) + 1, 0.0);
            mass[static_cast<std::size_t>(c.assoc[k] + 1)] += child.weight;
        }
        out.hypotheses.push_back(std::move(child));
    }

    // Rebuild marginal tracks: mixture over the missed branch (prior
    // components) and each matched branch (per-component posteriors).
    for (const auto& [label, mass] : branch_mass) {
        const BernoulliTrack& prior = density.tracks.at(label);
        double r = 0.0;
        for (const double w : mass) r += w;
        if (r <= 0.0) continue;

        BernoulliTrack post;
        post.label = label;
        post.r = r;
        if (mass[0] > 0.0) {
            for (const auto& comp : prior.p.components) {
                post.p.components.push_back({mass[0] * comp.weight / r, comp.g});
            }
        }
        const auto& row = cache.at(label);
        for (int j = 0; j < m; ++j) {
            const double mw = mass[static_cast<std::size_t>(j) + 1];
            if (mw <= 0.0) continue;
            const MeasCache& mc = row[j];
            for (std::size_t i = 0; i < mc.comp_like.size(); ++i) {
                if (mc.comp_like[i] <= 0.0) continue;
                post.p.components.push_back({mw * (mc.comp_like[i] / mc.eta) / r, mc.comp_post[i]});
            }
        }
        if (post.p.components.empty()) {
            post.p = prior.p;  // degenerate numerics; keep the prior shape
        }
        out.tracks.emplace(label, std::move(post));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pruning and extraction

GlmbDensity prune_hypotheses(const GlmbDensity& density, double w_min, int h_max, double gm_min,
                             int gm_cap) {
    if (w_min < 0.0 || w_min > 1.0 || gm_min < 0.0 || gm_min > 1.0) {
        throw std::invalid_argument("prune_hypotheses: thresholds must be in [0, 1]");
    }
    if (h_max < 1 || gm_cap < 1) {
        throw std::invalid_argument("prune_hypotheses: caps must be >= 1");
    }

    std::vector<GlmbHypothesis> sorted = density.hypotheses;
    std::stable_sort(sorted.begin(), sorted.end(), hypothesis_before);

    std::vector<GlmbHypothesis> kept;
    for (const auto& h : sorted) {
        if (h.weight >= w_min && static_cast<int>(kept.size()) < h_max) kept.push_back(h);
    }
    if (kept.empty() && !sorted.empty()) {
        kept.push_back(sorted.front());  // never-empty rule
        kept.back().weight = 1.0;
    }
    double total = 0.0;
    for (const auto& h : kept) total += h.weight;
    for (auto& h : kept) h.weight /= total;

    GlmbDensity out;
    out.hypotheses = std::move(kept);
    for (const auto& [label, track] : density.tracks) {
        const double r = marginal_existence(out.hypotheses, label);
        if (r <= 0.0) continue;  // orphaned track

        BernoulliTrack copy = track;
        copy.r = r;
        auto& comps = copy.p.components;
        std::stable_sort(comps.begin(), comps.end(),
                         [](const auto& a, const auto& b) { return a.weight > b.weight; });
        std::vector<GaussianMixture::Component> keep;
        for (const auto& c : comps) {
            if (c.weight >= gm_min && static_cast<int>(keep.size()) < gm_cap) keep.push_back(c);
        }
        if (keep.empty()) keep.push_back(comps.front());
        comps = std::move(keep);
        copy.p.normalize();
        out.tracks.emplace(label, std::move(copy));
    }
    return out;
}

std::vector<Extraction> extract_states(const GlmbDensity& density) {
    if (density.hypotheses.empty()) return {};
    const std::vector<double> card = cardinality_distribution(density);
    std::size_t map_n = 0;
    for (std::size_t n = 1; n < card.size(); ++n) {
        if (card[n] > card[map_n]) map_n = n;  // strict: ties prefer fewer objects
    }

    const GlmbHypothesis* best = nullptr;
    for (const auto& h : density.hypotheses) {
        if (h.labels.size() != map_n) continue;
        if (best == nullptr || h.weight > best->weight) best = &h;
    }
    if (best == nullptr) return {};

    std::vector<Extraction> out;
    for (const Label& label : best->labels) {
        const BernoulliTrack& track = density.tracks.at(label);
        const auto& comps = track.p.components;
        std::size_t top = 0;
        for (std::size_t i = 1; i < comps.size(); ++i) {
            if (comps[i].weight > comps[top].weight) top = i;
        }
        Extraction e;
        e.label = label;
        e.state = comps[top].g.mean;
        e.position = {e.state(0), e.state.size() > 1 ? e.state(1) : 0.0};
        out.push_back(std::move(e));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Measurement synthesis

std::vector<Eigen::Vector2d> generate_clutter(double rate, const MissionArea& area, Rng& rng) {
    if (rate < 0.0) throw std::invalid_argument("generate_clutter: rate must be >= 0");
    const int count = rng.poisson(rate);
    std::vector<Eigen::Vector2d> points;
    points.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double x = rng.uniform(area.x_min, area.x_max);
        const double y = rng.uniform(area.y_min, area.y_max);
        points.emplace_back(x, y);
    }
    return points;
}

std::vector<Detection> generate_measurements(const std::vector<Eigen::Vector2d>& positions,
                                             double p_detect, const Eigen::Matrix2d& noise_cov,
                                             Rng& rng) {
    if (p_detect < 0.0 || p_detect > 1.0) {
        throw std::invalid_argument("generate_measurements: p_detect must be in [0, 1]");
    }
    // Robust square root (LLT when definite, eigen-clamp when semidefinite)
    // so a zero covariance means noiseless measurements.
    Eigen::Matrix2d l = Eigen::Matrix2d::Zero();
    Eigen::LLT<Eigen::Matrix2d> llt(noise_cov);
    if (llt.info() == Eigen::Success) {
        l = llt.matrixL();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(noise_cov);
        l = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    }

    std::vector<Detection> out;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (!rng.bernoulli(p_detect)) continue;
        out.push_back({static_cast<int>(i), positions[i] + rng.normal2(l)});
    }
    return out;
}

BirthModel birth_from_positions(const std::vector<Eigen::Vector2d>& positions, double r,
                                double pos_var, double vel_var,
                                const std::vector<Eigen::Vector2d>& velocities) {
    if (!velocities.empty() && velocities.size() != positions.size()) {
        throw std::invalid_argument("birth_from_positions: velocity count mismatch");
    }
    BirthModel birth;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const auto& pos = positions[i];
        const Eigen::Vector2d vel = velocities.empty() ? Eigen::Vector2d::Zero().eval()
                                                       : velocities[i];
        Gaussian g;
        g.mean = Eigen::Vector4d(pos.x(), pos.y(), vel.x(), vel.y());
        g.cov = Eigen::Vector4d(pos_var, pos_var, vel_var, vel_var).asDiagonal();
        GaussianMixture gm;
        gm.components.push_back({1.0, std::move(g)});
        birth.push_back({r, std::move(gm)});
    }
    return birth;
}

// ---------------------------------------------------------------------------
// Filter front end

GlmbFilter::GlmbFilter(GlmbFilterConfig config) : cfg_(std::move(config)) {
    density_ = empty_density();
}

void GlmbFilter::step(const MeasurementScan& scan) {
    const GlmbSettings& s = cfg_.settings;
    const double birth_r = step_ == 0 ? s.birth_r_init : s.birth_r_recurring;
    const BirthModel birth = birth_from_positions(cfg_.birth_positions, birth_r, s.birth_pos_var,
                                                   s.birth_vel_var, cfg_.birth_velocities);

    density_ = glmb_predict(density_, cfg_.f, cfg_.q, s.p_survival, birth, step_,
                            s.predict_child_floor);
    density_ = prune_hypotheses(density_, s.hyp_weight_min, s.hyp_cap, s.gm_weight_min, s.gm_cap);

    AssocOptions opts;
    opts.exhaustive_limit = s.exhaustive_assoc_limit;
    opts.ranked_k = s.ranked_assoc_k;
    opts.gate_mahalanobis2 = s.gate_mahalanobis2;
    opts.max_coast_pos_var = s.max_coast_pos_var;
    density_ = glmb_update(density_, scan, cfg_.p_detect, cfg_.clutter_rate, cfg_.h, cfg_.r,
                           cfg_.area, opts);
    density_ = prune_hypotheses(density_, s.hyp_weight_min, s.hyp_cap, s.gm_weight_min, s.gm_cap);
    ++step_;
}

}  // namespace swarmstat
