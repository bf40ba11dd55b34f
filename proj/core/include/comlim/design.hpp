#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "comlim/families.hpp"
#include "comlim/game.hpp"
#include "comlim/interval_union.hpp"

namespace comlim {

enum class ObjectiveKind {
  Leader,
  Follower,
  ConsumerSurplus,
  ProducerSurplus,
  Welfare,
  Custom,
};

struct Objective {
  ObjectiveKind kind = ObjectiveKind::Leader;
  std::function<double(double, double)> custom;  // W(x, y) for Custom
};

enum class CstClass { Simple, I, P, All };

ObjectiveKind objective_from_name(const std::string& name);
CstClass cst_class_from_name(const std::string& name);

double consumer_surplus(double x, double y, double d);
double producer_surplus(const GameSpec& spec, double x, double y);
double welfare(const GameSpec& spec, double x, double y, double d);

struct DesignSolution {
  IntervalUnion optimal_actions;  // all maximizers, exact ties kept
  double objective_value = 0;
  std::string witness_cst;  // commitment structure implementing an optimum
  std::string regime;
  std::optional<double> closed_form_action;
  std::optional<double> closed_form_action2;  // present in two-solution regimes
  bool closed_form_agrees = true;
};

/// Commitment design for the duopoly family: numeric maximization of the
/// objective over the plausible set of the class, cross-checked against the
/// closed-form solution branch when one exists (class All).
DesignSolution solve_cdp(const DuopolyParams& params, const Objective& objective,
                         CstClass cst_class);

/// Generic numeric design problem over a computed plausible set. Classes P
/// and All require the regularity conditions; no uniqueness claim is made.
DesignSolution solve_cdp(const GameSpec& spec,
                         const std::function<double(double, double)>& objective,
                         CstClass cst_class);

/// Smallest and largest plausible actions of the class.
std::pair<double, double> extreme_plausible_actions(const DuopolyParams& params,
                                                    CstClass cst_class);
std::pair<double, double> extreme_plausible_actions(const GameSpec& spec,
                                                    CstClass cst_class);

/// The plausible set of a class; duopoly uses closed forms where the
/// regularity conditions fail, numeric characterizations otherwise.
IntervalUnion plausible_set_for_class(const GameSpec& spec, CstClass cst_class,
                                      const DuopolyParams* duopolyize = nullptr);

}  // namespace comlim
