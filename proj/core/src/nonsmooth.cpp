#include "swg/nonsmooth.hpp"

#include <cmath>
#include <numbers>

namespace swg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::array<double, 3> kBreaks = {0.25, 0.5, 0.75};

// Pure antiderivatives of each branch of v''' (no integration constants).
double base_d3(int k, double x) {
    switch (k) {
        case 0: return std::exp(x);
        case 1: return std::sin(kPi * x);
        case 2: return std::exp(-x);
        default: return std::cos(kPi * x);
    }
}
double base_d2(int k, double x) {
    switch (k) {
        case 0: return std::exp(x);
        case 1: return -std::cos(kPi * x) / kPi;
        case 2: return -std::exp(-x);
        default: return std::sin(kPi * x) / kPi;
    }
}
double base_d1(int k, double x) {
    switch (k) {
        case 0: return std::exp(x);
        case 1: return -std::sin(kPi * x) / (kPi * kPi);
        case 2: return std::exp(-x);
        default: return -std::cos(kPi * x) / (kPi * kPi);
    }
}
double base_v(int k, double x) {
    switch (k) {
        case 0: return std::exp(x);
        case 1: return std::cos(kPi * x) / (kPi * kPi * kPi);
        case 2: return -std::exp(-x);
        default: return -std::sin(kPi * x) / (kPi * kPi * kPi);
    }
}

}  // namespace

NonSmoothV::NonSmoothV() {
    // Branch 0: pin v(0) = v'(0) = v''(0) = 0.
    a_[0] = -base_d2(0, 0.0);
    b_[0] = -(base_d1(0, 0.0) + a_[0] * 0.0);
    c_[0] = -base_v(0, 0.0);
    // Remaining branches: match v'', v', v across each break.
    for (int k = 1; k < 4; ++k) {
        const double xb = kBreaks[k - 1];
        const double d2_left = base_d2(k - 1, xb) + a_[k - 1];
        const double d1_left = base_d1(k - 1, xb) + a_[k - 1] * xb + b_[k - 1];
        const double v_left = base_v(k - 1, xb) + 0.5 * a_[k - 1] * xb * xb + b_[k - 1] * xb +
                              c_[k - 1];
        a_[k] = d2_left - base_d2(k, xb);
        b_[k] = d1_left - base_d1(k, xb) - a_[k] * xb;
        c_[k] = v_left - base_v(k, xb) - 0.5 * a_[k] * xb * xb - b_[k] * xb;
    }
}

int NonSmoothV::branch(double x) const {
    if (x < kBreaks[0]) return 0;
    if (x < kBreaks[1]) return 1;
    if (x < kBreaks[2]) return 2;
    return 3;
}

double NonSmoothV::value(double x) const {
    const int k = branch(x);
    return base_v(k, x) + 0.5 * a_[k] * x * x + b_[k] * x + c_[k];
}

double NonSmoothV::d1(double x) const {
    const int k = branch(x);
    return base_d1(k, x) + a_[k] * x + b_[k];
}

double NonSmoothV::d2(double x) const {
    const int k = branch(x);
    return base_d2(k, x) + a_[k];
}

double NonSmoothV::d3(double x) const { return base_d3(branch(x), x); }

std::span<const double> NonSmoothV::breaks() { return kBreaks; }

ScalarField NonSmoothV::as_field() const {
    ScalarField field;
    field.f = [v = *this](double x) { return v.value(x); };
    field.d1 = [v = *this](double x) { return v.d1(x); };
    field.d2 = [v = *this](double x) { return v.d2(x); };
    field.d3 = [v = *this](double x) { return v.d3(x); };
    field.breaks.assign(kBreaks.begin(), kBreaks.end());
    return field;
}

ScalarField smooth_projection_target() {
    ScalarField field;
    field.f = [](double x) { return std::sin(kPi * x / 2 + 1); };
    field.d1 = [](double x) { return kPi / 2 * std::cos(kPi * x / 2 + 1); };
    field.d2 = [](double x) { return -kPi * kPi / 4 * std::sin(kPi * x / 2 + 1); };
    field.d3 = [](double x) { return -kPi * kPi * kPi / 8 * std::cos(kPi * x / 2 + 1); };
    return field;
}

}  // namespace swg
