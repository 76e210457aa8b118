#include "trichokinetics/model.hpp"

#include <sstream>

namespace tricho {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

HypothesisReport validate_hypotheses(const ModelParams& p) {
    p.check_hard_constraints();

    HypothesisReport report;
    auto add = [&report](std::string name, bool ok, std::string message) {
        report.checks.push_back({std::move(name), ok, ok ? std::string{} : std::move(message)});
    };

    add("recycling fraction in [0,1)", p.alpha >= 0.0 && p.alpha < 1.0,
        "alpha=" + fmt(p.alpha) + " violates 0<=alpha<1");

    add("mortality below peak growth rate", p.k_d > 0.0 && p.k_d < p.growth.supremum(),
        "k_d=" + fmt(p.k_d) + " violates 0<k_d<" + fmt(p.growth.supremum()));

    {
        const double Y_Ps = p.Y_Ps();
        std::string msg;
        if (!(p.Y_Bs > 0.0 && p.Y_Bs < 1.0))
            msg += "Y_Bs=" + fmt(p.Y_Bs) + " violates 0<Y_Bs<1";
        if (!(Y_Ps > 0.0 && Y_Ps < 1.0)) {
            if (!msg.empty()) msg += "; ";
            msg += "Y_Ps=" + fmt(Y_Ps) + " violates 0<Y_Ps<1";
        }
        const bool ok = msg.empty();
        add("yield coefficients in (0,1)", ok, std::move(msg));
    }

    {
        std::string msg;
        if (!(p.m_s > 0.0)) msg += "m_s=" + fmt(p.m_s) + " violates m_s>0";
        if (!(p.m_P > 0.0)) {
            if (!msg.empty()) msg += "; ";
            msg += "m_P=" + fmt(p.m_P) + " violates m_P>0";
        }
        const bool ok = msg.empty();
        add("maintenance coefficients positive", ok, std::move(msg));
    }

    add("limit-prediction denominator positive", p.limit_denominator() > 0.0,
        "D=" + fmt(p.limit_denominator()) +
            " violates 1-Y_Bs*(alpha-m_s/k_d)>0; closed-form limits are inapplicable");

    return report;
}

} // namespace tricho
