#include "frontlab/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace frontlab {

double ShootingResult::eval(double z) const {
    if (phi.empty()) return 0.0;
    double f = (z - z0) / dz;
    if (f <= 0) return phi.front();
    if (f >= static_cast<double>(phi.size() - 1)) return phi.back();
    int i = static_cast<int>(f);
    double t = f - i;
    return (1 - t) * phi[i] + t * phi[i + 1];
}

namespace {

struct ShotOutcome {
    int sign;  // -1 overshoot (phi crossed 0), +1 undershoot (turned back up)
};

constexpr double kEps0 = 1e-8;
constexpr double kZMax = 400.0;

double fval(const Reaction& r, double s) { return r.f({0, 0}, s); }

// one RK4 step of (phi' = v, v' = -c v - f(phi))
void rk4(const Reaction& r, double c, double dz, double& phi, double& v) {
    auto fv = [&](double p, double w, double& dp, double& dw) {
        dp = w;
        dw = -c * w - fval(r, p);
    };
    double k1p, k1v, k2p, k2v, k3p, k3v, k4p, k4v;
    fv(phi, v, k1p, k1v);
    fv(phi + 0.5 * dz * k1p, v + 0.5 * dz * k1v, k2p, k2v);
    fv(phi + 0.5 * dz * k2p, v + 0.5 * dz * k2v, k3p, k3v);
    fv(phi + dz * k3p, v + dz * k3v, k4p, k4v);
    phi += dz / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
    v += dz / 6 * (k1v + 2 * k2v + 2 * k3v + k4v);
}

ShotOutcome shoot(const Reaction& r, double c, double ignition_foot,
                  std::vector<std::pair<double, double>>* record = nullptr) {
    double dfds1 = r.dfds({0, 0}, 1.0);
    double mu = 0.5 * (-c + std::sqrt(c * c - 4 * std::min(dfds1, -1e-12)));
    double phi = 1.0 - kEps0;
    double v = -kEps0 * mu;
    double z = 0.0;
    const double dz = 1e-3;
    while (z < kZMax) {
        if (record) record->push_back({z, phi});
        rk4(r, c, dz, phi, v);
        z += dz;
        if (phi <= 0.0) return {-1};
        if (v >= 0.0) return {+1};
        if (ignition_foot > 0.0 && phi < ignition_foot) {
            // f = 0 below the foot: v decays as exp(-c z), phi tends to
            // phi + v / c analytically
            double limit = phi + v / c;
            if (record) {
                while (phi > 1e-12 && z < kZMax) {
                    record->push_back({z, phi});
                    double decay = std::exp(-c * dz);
                    phi += v / c * (1.0 - decay);
                    v *= decay;
                    z += dz;
                }
            }
            return {limit < 0.0 ? -1 : +1};
        }
    }
    // ran out of range while still decreasing: treat as undershoot
    return {+1};
}

}  // namespace

ShootingResult planar_front_shooting(const Reaction& r, double tol) {
    if (!r.homogeneous())
        throw std::invalid_argument("planar shooting requires a homogeneous reaction");
    if (r.kind == ReactionKind::kpp)
        throw std::invalid_argument("planar shooting requires a bistable or ignition reaction");

    double foot = r.kind == ReactionKind::ignition ? r.alpha * 0.999 : 0.0;

    ShootingResult out;
    double c_lo = 1e-9;
    if (shoot(r, c_lo, foot).sign > 0) {
        // undershoot already at c ~ 0: no positive-speed front
        out.status = FrontStatus::no_positive_front;
        return out;
    }
    double c_hi = 0.5;
    while (shoot(r, c_hi, foot).sign < 0) {
        c_hi *= 2;
        if (c_hi > 64.0) throw std::runtime_error("shooting bracket ran away");
    }
    while (c_hi - c_lo > tol) {
        double c = 0.5 * (c_lo + c_hi);
        if (shoot(r, c, foot).sign < 0)
            c_lo = c;
        else
            c_hi = c;
    }
    double c = 0.5 * (c_lo + c_hi);

    std::vector<std::pair<double, double>> rec;
    shoot(r, c, foot, &rec);

    // clip to the resolved range and place phi = 1/2 at z = 0
    double zcross = 0.0;
    bool found = false;
    for (size_t k = 1; k < rec.size(); ++k) {
        if (rec[k - 1].second >= 0.5 && rec[k].second < 0.5) {
            double t = (rec[k - 1].second - 0.5) / (rec[k - 1].second - rec[k].second);
            zcross = rec[k - 1].first + t * (rec[k].first - rec[k - 1].first);
            found = true;
            break;
        }
    }
    if (!found) throw std::runtime_error("shooting profile has no midpoint crossing");

    const double dz_out = 0.002;
    std::vector<double> phi_tab;
    double z_lo = rec.front().first - zcross;
    size_t k = 0;
    // resample on a uniform grid, dropping the unresolved early ramp
    std::vector<double> zs, ps;
    for (auto& p : rec) {
        zs.push_back(p.first - zcross);
        ps.push_back(p.second);
    }
    double z_begin = std::ceil(z_lo / dz_out) * dz_out;
    for (double z = z_begin; z <= zs.back(); z += dz_out) {
        while (k + 1 < zs.size() && zs[k + 1] < z) ++k;
        double t = (z - zs[k]) / (zs[k + 1] - zs[k]);
        double val = (1 - t) * ps[k] + t * ps[k + 1];
        if (val < 1e-10) break;
        phi_tab.push_back(val);
    }

    out.status = FrontStatus::ok;
    out.c = c;
    out.z0 = z_begin;
    out.dz = dz_out;
    out.phi = std::move(phi_tab);

    // analytic leading decay rate: lambda^2 - c lambda + f'(0) = 0
    double dfds0 = r.dfds({0, 0}, 0.0);
    if (r.kind == ReactionKind::ignition)
        out.lambda0 = c;
    else
        out.lambda0 = 0.5 * (c + std::sqrt(c * c - 4 * dfds0));
    double C = 0.0;
    for (size_t i = 0; i < out.phi.size(); ++i) {
        double z = out.z0 + i * dz_out;
        C = std::max(C, out.phi[i] * std::exp(out.lambda0 * z));
    }
    out.C = C;
    return out;
}

}  // namespace frontlab
