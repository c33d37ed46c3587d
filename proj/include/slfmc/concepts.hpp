#pragma once

#include "slfmc/formula.hpp"

#include <string>
#include <vector>

namespace slfmc::concepts {

/// Agent i is bound to profile variable vars[i] and pursues goals[i] (a path formula).
struct Profile {
    std::vector<std::string> agents;
    std::vector<std::string> vars;
    std::vector<Formula> goals;
};

/// Bindings of the profile, then min over agents of
/// leq(<<y_i>> (a_i,y_i) A goal_i, A goal_i). Deviation variables are
/// `dev_prefix + index`.
Formula nash(const Profile& p, const std::string& dev_prefix = "y");

/// <<y>> bindings max_i diff((a_i,y) A goal_i, A goal_i).
Formula nash_gap(const Profile& p, const std::string& dev = "y");

/// Two-agent secure equilibrium: bindings, then for both i,
/// [[y]] lexleq_i(((a_i,y) A g1, (a_i,y) A g2), (A g1, A g2)).
Formula secure(const Profile& p, const std::string& dev = "y");

/// Weak rational synthesis. Agent 0 is the controller with goal 0; the
/// others form the environment whose profile must be a Nash equilibrium.
Formula weak_rational(const Profile& p, const std::string& dev_prefix = "y");

/// Strong rational synthesis body for controller variable vars[0]; the
/// environment variables are universally quantified.
Formula strong_rational(const Profile& p, const std::string& dev_prefix = "y");

/// Core equilibrium: min over coalitions C of
/// [[y_i]]_{i in C} <<y_j>>_{j not in C} min_{j in C} leq(dev A goal_j, cur A goal_j).
Formula core(const Profile& p, const std::string& dev_prefix = "y");

/// <<x>> [[y]] (c,x) (e,y) A psi.
Formula synthesis(const std::string& controller, const std::string& environment, const Formula& psi,
                  const std::string& x = "x", const std::string& y = "y");

/// <<x_1>> [[y_1]] ... <<x_n>> [[y_n]] (c_1,x_1) (e_1,y_1) ... A psi.
Formula synthesis_multi(const std::vector<std::string>& controllers, const std::vector<std::string>& environments,
                        const Formula& psi);

/// Carrier c and guard g fix their strategies before the villain v.
/// `dist` is the precomputed distance proposition.
Formula drone_rescue(const std::string& dist = "dist", const std::string& safe = "safe");
/// As `drone_rescue`, but the guard chooses after seeing the villain's strategy.
Formula drone_spy(const std::string& dist = "dist", const std::string& safe = "safe");

/// Wraps `body` with existential quantifiers over the given variables.
Formula exists_all(const std::vector<std::string>& vars, Formula body);

}  // namespace slfmc::concepts
