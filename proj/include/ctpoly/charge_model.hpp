/*!
  \file charge_model.hpp
  \brief Evaluation semantics of a crosstalk gate

  A crosstalk gate sums the charge induced by rising transitions on its
  aggressor nets onto a floating victim net. A thresholding inverter reads
  the victim; zero, one or two inverter stages follow. Couplings are
  normalized integers: one unit is the unit capacitance of the gate family.
*/

#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace ctpoly
{

using rational = boost::rational<std::int64_t>;

/*! \brief Raised when a caller breaks a precondition (dimension mismatch, bad parameter). */
struct contract_error : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

inline constexpr uint32_t default_max_weight = 8u;

/*! \brief Normalized coupling capacitances of the aggressors onto the victim */
struct coupling_weights
{
  /*! \brief one weight per data aggressor */
  std::vector<uint32_t> data;

  /*! \brief control aggressor weight, 0 for a non-polymorphic gate */
  uint32_t ctrl{0};

  uint32_t data_total() const
  {
    return std::accumulate( data.begin(), data.end(), 0u );
  }

  uint32_t total() const { return data_total() + ctrl; }

  bool operator==( coupling_weights const& ) const = default;
};

/*! \brief Margin function: minimum total active coupling that flips the first inverter */
struct margin_spec
{
  uint32_t theta{1};

  bool operator==( margin_spec const& ) const = default;
};

struct analog_params
{
  /*! \brief victim-to-ground capacitance, same unit as the couplings */
  rational c_parasitic{0};

  /*! \brief inverter switching level as a fraction of the supply */
  rational v_threshold{1, 2};
};

enum class victim_phase
{
  discharge,
  evaluation
};

inline void validate_weights( coupling_weights const& w, uint32_t max_weight = default_max_weight )
{
  if ( w.data.empty() )
    throw contract_error( "coupling weights: at least one data aggressor required" );
  if ( w.data_total() == 0u )
    throw contract_error( "coupling weights: at least one data weight must be positive" );
  for ( auto x : w.data )
  {
    if ( x > max_weight )
      throw contract_error( "coupling weights: data weight " + std::to_string( x ) + " exceeds bound " + std::to_string( max_weight ) );
  }
  if ( w.ctrl > max_weight )
    throw contract_error( "coupling weights: control weight " + std::to_string( w.ctrl ) + " exceeds bound " + std::to_string( max_weight ) );
}

inline void validate_margin( coupling_weights const& w, margin_spec const& m )
{
  if ( m.theta < 1u || m.theta > w.total() )
    throw contract_error( "margin: theta " + std::to_string( m.theta ) + " outside [1, " + std::to_string( w.total() ) + "]" );
}

inline void validate_analog( analog_params const& a )
{
  if ( a.c_parasitic < 0 )
    throw contract_error( "analog params: negative parasitic capacitance" );
  if ( a.v_threshold <= 0 || a.v_threshold >= 1 )
    throw contract_error( "analog params: v_threshold must lie in (0,1)" );
}

namespace detail
{

inline void check_dimensions( coupling_weights const& w, std::span<const uint8_t> inputs )
{
  if ( inputs.size() != w.data.size() )
  {
    throw contract_error( "dimension mismatch: " + std::to_string( inputs.size() ) + " inputs for " +
                          std::to_string( w.data.size() ) + " data weights" );
  }
}

} // namespace detail

/*! \brief Total coupling of the aggressors that rose in this evaluation */
inline uint32_t active_coupling( coupling_weights const& w, std::span<const uint8_t> inputs, bool ctrl )
{
  detail::check_dimensions( w, inputs );
  uint32_t sum = ctrl ? w.ctrl : 0u;
  for ( auto i = 0u; i < inputs.size(); ++i )
  {
    if ( inputs[i] )
      sum += w.data[i];
  }
  return sum;
}

/*! \brief Same as `active_coupling`, with data inputs packed LSB-first into a mask */
inline uint32_t active_coupling( coupling_weights const& w, uint64_t input_mask, bool ctrl )
{
  if ( w.data.size() < 64u && ( input_mask >> w.data.size() ) != 0u )
    throw contract_error( "dimension mismatch: input mask wider than gate arity" );
  uint32_t sum = ctrl ? w.ctrl : 0u;
  for ( auto i = 0u; i < w.data.size(); ++i )
  {
    if ( ( input_mask >> i ) & 1u )
      sum += w.data[i];
  }
  return sum;
}

/*! \brief Normalized victim level after charge sharing, in [0,1]

  The victim starts at ground after discharge; each rising aggressor shares
  its coupling with the total capacitance seen by the victim.
*/
inline rational induced_level( coupling_weights const& w, std::span<const uint8_t> inputs, bool ctrl, analog_params const& analog = {} )
{
  auto const active = active_coupling( w, inputs, ctrl );
  return rational( active ) / ( rational( w.total() ) + analog.c_parasitic );
}

inline rational induced_level( coupling_weights const& w, uint64_t input_mask, bool ctrl, analog_params const& analog = {} )
{
  auto const active = active_coupling( w, input_mask, ctrl );
  return rational( active ) / ( rational( w.total() ) + analog.c_parasitic );
}

/*! \brief Discrete margin test: active coupling >= theta */
inline bool fires( coupling_weights const& w, margin_spec const& m, std::span<const uint8_t> inputs, bool ctrl )
{
  return active_coupling( w, inputs, ctrl ) >= m.theta;
}

inline bool fires( coupling_weights const& w, margin_spec const& m, uint64_t input_mask, bool ctrl )
{
  return active_coupling( w, input_mask, ctrl ) >= m.theta;
}

/*! \brief Output after `n_stages` inverters; one stage inverts the first-stage firing */
inline bool stage_output( bool fire, uint32_t n_stages )
{
  if ( n_stages != 1u && n_stages != 2u )
    throw contract_error( "stage count must be 1 or 2, got " + std::to_string( n_stages ) );
  return n_stages == 1u ? !fire : fire;
}

inline bool analog_fires( coupling_weights const& w, std::span<const uint8_t> inputs, bool ctrl, analog_params const& analog )
{
  return induced_level( w, inputs, ctrl, analog ) >= analog.v_threshold;
}

inline bool analog_fires( coupling_weights const& w, uint64_t input_mask, bool ctrl, analog_params const& analog )
{
  return induced_level( w, input_mask, ctrl, analog ) >= analog.v_threshold;
}

/*! \brief Inverter level placed halfway between the last non-firing and first firing level

  With integer couplings, active coupling `theta - 1` and `theta` bracket the
  decision; the midpoint keeps both margins equal and off the boundary.
*/
inline analog_params default_analog_params( coupling_weights const& w, margin_spec const& m, rational c_parasitic = 0 )
{
  analog_params p;
  p.c_parasitic = c_parasitic;
  p.v_threshold = ( rational( m.theta ) - rational( 1, 2 ) ) / ( rational( w.total() ) + c_parasitic );
  return p;
}

struct noise_margin_report
{
  /*! \brief v_threshold minus the highest non-firing level */
  rational low_margin;

  /*! \brief lowest firing level minus v_threshold */
  rational high_margin;

  bool analog_valid() const { return low_margin > 0 && high_margin >= 0; }
};

/*! \brief Worst-case separation between analog levels and the inverter threshold

  Enumerates every data-input vector (and both control values when the gate
  has a control aggressor) and classifies each by the discrete margin test.
*/
inline noise_margin_report noise_margins( coupling_weights const& w, margin_spec const& m, analog_params const& analog )
{
  if ( w.data.size() >= 32u )
    throw contract_error( "noise margins: arity too large to enumerate" );

  std::optional<rational> min_firing, max_quiet;
  uint32_t const ctrl_values = w.ctrl > 0u ? 2u : 1u;
  for ( uint32_t c = 0u; c < ctrl_values; ++c )
  {
    for ( uint64_t x = 0u; x < ( uint64_t{1} << w.data.size() ); ++x )
    {
      auto const level = induced_level( w, x, c == 1u, analog );
      if ( fires( w, m, x, c == 1u ) )
      {
        if ( !min_firing || level < *min_firing )
          min_firing = level;
      }
      else if ( !max_quiet || level > *max_quiet )
      {
        max_quiet = level;
      }
    }
  }

  noise_margin_report r;
  /* theta >= 1 keeps the all-zero vector quiet; theta <= total makes all-one fire */
  r.low_margin = analog.v_threshold - max_quiet.value_or( rational( 0 ) );
  r.high_margin = min_firing.value_or( rational( 1 ) ) - analog.v_threshold;
  return r;
}

/*! \brief Victim net state across the discharge/evaluation protocol */
class victim_state
{
public:
  rational level() const { return level_; }
  victim_phase phase() const { return phase_; }

  /*! \brief Dis asserted: victim shorted to ground */
  void discharge()
  {
    phase_ = victim_phase::discharge;
    level_ = 0;
  }

  /*! \brief Dis released and inputs rise; returns the induced level */
  rational evaluate( coupling_weights const& w, std::span<const uint8_t> inputs, bool ctrl, analog_params const& analog = {} )
  {
    if ( phase_ != victim_phase::discharge )
      throw contract_error( "victim must be discharged before evaluation" );
    phase_ = victim_phase::evaluation;
    level_ = induced_level( w, inputs, ctrl, analog );
    return level_;
  }

private:
  rational level_{0};
  victim_phase phase_{victim_phase::discharge};
};

} // namespace ctpoly
