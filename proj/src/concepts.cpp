#include "slfmc/concepts.hpp"

#include "slfmc/error.hpp"

namespace slfmc::concepts {

namespace {

void check_shape(const Profile& p, std::size_t min_agents) {
    if (p.agents.size() != p.vars.size() || p.agents.size() != p.goals.size())
        throw Error(ErrorCode::ArityMismatch, "profile needs one variable and one goal per agent");
    if (p.agents.size() < min_agents)
        throw Error(ErrorCode::ArityMismatch, "solution concept needs at least " + std::to_string(min_agents) + " agents");
}

Formula bind_all(const std::vector<std::string>& agents, const std::vector<std::string>& vars, Formula body) {
    for (std::size_t i = agents.size(); i-- > 0;) body = fb::bind(agents[i], vars[i], body);
    return body;
}

Formula apply(const FuncSpec& f, std::vector<Formula> args) { return fb::func(f, std::move(args)); }

Profile tail(const Profile& p) {
    Profile t;
    t.agents.assign(p.agents.begin() + 1, p.agents.end());
    t.vars.assign(p.vars.begin() + 1, p.vars.end());
    t.goals.assign(p.goals.begin() + 1, p.goals.end());
    return t;
}

}  // namespace

Formula nash(const Profile& p, const std::string& dev_prefix) {
    check_shape(p, 1);
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < p.agents.size(); ++i) {
        std::string y = dev_prefix + std::to_string(i + 1);
        Formula dev = fb::exists_strat(y, fb::bind(p.agents[i], y, fb::path_a(p.goals[i])));
        parts.push_back(apply(FuncSpec::leq(), {dev, fb::path_a(p.goals[i])}));
    }
    return bind_all(p.agents, p.vars, fb::min(parts));
}

Formula nash_gap(const Profile& p, const std::string& dev) {
    check_shape(p, 1);
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < p.agents.size(); ++i)
        parts.push_back(apply(FuncSpec::diff(), {fb::bind(p.agents[i], dev, fb::path_a(p.goals[i])), fb::path_a(p.goals[i])}));
    return fb::exists_strat(dev, bind_all(p.agents, p.vars, fb::max(parts)));
}

Formula secure(const Profile& p, const std::string& dev) {
    check_shape(p, 2);
    if (p.agents.size() != 2) throw Error(ErrorCode::ArityMismatch, "secure equilibria are defined for two agents");
    std::vector<Formula> parts;
    for (int i = 0; i < 2; ++i) {
        const std::string& a = p.agents[i];
        Formula ind = apply(FuncSpec::lexleq(i + 1),
                            {fb::bind(a, dev, fb::path_a(p.goals[0])), fb::bind(a, dev, fb::path_a(p.goals[1])),
                             fb::path_a(p.goals[0]), fb::path_a(p.goals[1])});
        parts.push_back(fb::forall_strat(dev, ind));
    }
    return bind_all(p.agents, p.vars, fb::min(parts));
}

Formula weak_rational(const Profile& p, const std::string& dev_prefix) {
    check_shape(p, 2);
    return bind_all(p.agents, p.vars, fb::conj(fb::path_a(p.goals[0]), nash(tail(p), dev_prefix)));
}

Formula strong_rational(const Profile& p, const std::string& dev_prefix) {
    check_shape(p, 2);
    Formula body = bind_all(p.agents, p.vars, fb::disj(fb::neg(nash(tail(p), dev_prefix)), fb::path_a(p.goals[0])));
    for (std::size_t i = p.vars.size(); i-- > 1;) body = fb::forall_strat(p.vars[i], body);
    return body;
}

Formula core(const Profile& p, const std::string& dev_prefix) {
    check_shape(p, 1);
    const std::size_t n = p.agents.size();
    if (n > 16) throw Error(ErrorCode::ResourceCap, "too many coalitions");
    std::vector<std::string> devs;
    for (std::size_t i = 0; i < n; ++i) devs.push_back(dev_prefix + std::to_string(i + 1));
    std::vector<Formula> coalitions;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<Formula> parts;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(mask >> j & 1)) continue;
            Formula deviated = bind_all(p.agents, devs, fb::path_a(p.goals[j]));
            Formula current = bind_all(p.agents, p.vars, fb::path_a(p.goals[j]));
            parts.push_back(apply(FuncSpec::leq(), {deviated, current}));
        }
        Formula body = fb::min(parts);
        for (std::size_t j = n; j-- > 0;)
            if (!(mask >> j & 1)) body = fb::exists_strat(devs[j], body);
        for (std::size_t i = n; i-- > 0;)
            if (mask >> i & 1) body = fb::forall_strat(devs[i], body);
        coalitions.push_back(body);
    }
    return fb::min(coalitions);
}

Formula synthesis(const std::string& controller, const std::string& environment, const Formula& psi,
                  const std::string& x, const std::string& y) {
    return fb::exists_strat(x, fb::forall_strat(y, fb::bind(controller, x, fb::bind(environment, y, fb::path_a(psi)))));
}

Formula synthesis_multi(const std::vector<std::string>& controllers, const std::vector<std::string>& environments,
                        const Formula& psi) {
    if (controllers.size() != environments.size() || controllers.empty())
        throw Error(ErrorCode::ArityMismatch, "need matching nonempty controller and environment lists");
    const std::size_t n = controllers.size();
    std::vector<std::string> agents, vars;
    for (std::size_t i = 0; i < n; ++i) {
        agents.push_back(controllers[i]);
        vars.push_back("x" + std::to_string(i + 1));
        agents.push_back(environments[i]);
        vars.push_back("y" + std::to_string(i + 1));
    }
    Formula body = bind_all(agents, vars, fb::path_a(psi));
    for (std::size_t i = 2 * n; i-- > 0;)
        body = i % 2 == 0 ? fb::exists_strat(vars[i], body) : fb::forall_strat(vars[i], body);
    return body;
}

namespace {
Formula drone_goal(const std::string& dist, const std::string& safe) {
    return fb::until(fb::atom(dist), fb::atom(safe));
}
}  // namespace

Formula drone_rescue(const std::string& dist, const std::string& safe) {
    Formula body = bind_all({"c", "g", "v"}, {"x", "y", "z"}, fb::path_a(drone_goal(dist, safe)));
    return fb::exists_strat("x", fb::exists_strat("y", fb::forall_strat("z", body)));
}

Formula drone_spy(const std::string& dist, const std::string& safe) {
    Formula body = bind_all({"c", "g", "v"}, {"x", "y", "z"}, fb::path_a(drone_goal(dist, safe)));
    return fb::exists_strat("x", fb::forall_strat("z", fb::exists_strat("y", body)));
}

Formula exists_all(const std::vector<std::string>& vars, Formula body) {
    for (std::size_t i = vars.size(); i-- > 0;) body = fb::exists_strat(vars[i], body);
    return body;
}

}  // namespace slfmc::concepts
