#include <gtest/gtest.h>

#include <ctpoly/threshold_synth.hpp>

#include "test_support.hpp"

using namespace ctpoly;
using namespace ctpoly::test;

namespace
{

synth_problem single( std::string_view f0 )
{
  return synth_problem{ truth_table_from_string( f0 ), std::nullopt };
}

synth_problem pair( std::string_view f0, std::string_view f1 )
{
  return synth_problem{ truth_table_from_string( f0 ), truth_table_from_string( f1 ) };
}

void expect_gate( std::optional<gate_spec> const& g, std::vector<uint32_t> const& w, uint32_t ctrl, uint32_t theta )
{
  ASSERT_TRUE( g.has_value() );
  EXPECT_EQ( g->weights.data, w );
  EXPECT_EQ( g->weights.ctrl, ctrl );
  EXPECT_EQ( g->margin.theta, theta );
  EXPECT_EQ( g->n_stages, 2u );
  EXPECT_EQ( g->kind, gate_kind::generic_ct );
}

} // namespace

TEST( ThresholdSynth, And2 )
{
  auto const s = solve_threshold( single( "0001" ) );
  ASSERT_TRUE( s );
  EXPECT_EQ( s->weights.data, ( std::vector<uint32_t>{ 1, 1 } ) );
  EXPECT_EQ( s->margin.theta, 2u );
}

TEST( ThresholdSynth, Or2AndSingleVariable )
{
  auto const s = solve_threshold( single( "0111" ) );
  ASSERT_TRUE( s );
  EXPECT_EQ( s->weights.data, ( std::vector<uint32_t>{ 1, 1 } ) );
  EXPECT_EQ( s->margin.theta, 1u );

  /* f = x1 only: x0 gets weight 0 */
  auto const t = solve_threshold( single( "0011" ) );
  ASSERT_TRUE( t );
  EXPECT_EQ( t->weights.data, ( std::vector<uint32_t>{ 0, 1 } ) );
}

TEST( ThresholdSynth, XorInfeasible )
{
  EXPECT_FALSE( solve_threshold( single( "0110" ) ) );
}

TEST( ThresholdSynth, ConstantIsDegenerate )
{
  EXPECT_THROW( solve_threshold( single( "0000" ) ), degenerate_function_error );
  EXPECT_THROW( solve_threshold( single( "1111" ) ), degenerate_function_error );
}

TEST( ThresholdSynth, ShapeErrors )
{
  EXPECT_THROW( solve_threshold( synth_problem{ truth_table{ 0, 1, 1 }, std::nullopt } ), contract_error );
  EXPECT_THROW( solve_polymorphic( synth_problem{ truth_table{ 0, 0, 0, 1 }, truth_table{ 0, 1 } } ), contract_error );
  EXPECT_THROW( solve_polymorphic( single( "0001" ) ), contract_error );
}

TEST( ThresholdSynth, AndOrPair )
{
  expect_gate( solve_polymorphic( pair( "0001", "0111" ) ), { 1, 1 }, 1, 2 );
}

TEST( ThresholdSynth, Oa21Ao21Pair )
{
  expect_gate( solve_polymorphic( pair( "00000111", "00011111" ) ), { 1, 1, 2 }, 1, 3 );
}

TEST( ThresholdSynth, And3Ao21Pair )
{
  expect_gate( solve_polymorphic( pair( "00000001", "00011111" ) ), { 1, 1, 2 }, 2, 4 );
}

TEST( ThresholdSynth, Ao21Or3Pair )
{
  expect_gate( solve_polymorphic( pair( "00011111", "01111111" ) ), { 1, 1, 2 }, 1, 2 );
}

TEST( ThresholdSynth, AndNandInfeasible )
{
  EXPECT_FALSE( solve_polymorphic( pair( "0001", "1110" ) ) );
}

TEST( ThresholdSynth, EqualPairDegenerate )
{
  EXPECT_THROW( solve_polymorphic( pair( "0001", "0001" ) ), degenerate_function_error );
}

TEST( ThresholdSynth, DominanceRequired )
{
  /* ctrl can only add charge, so f1 must cover f0 */
  EXPECT_FALSE( solve_polymorphic( pair( "0111", "0001" ) ) );
  EXPECT_TRUE( dominates( truth_table_from_string( "0111" ), truth_table_from_string( "0001" ) ) );
  EXPECT_FALSE( dominates( truth_table_from_string( "0001" ), truth_table_from_string( "0111" ) ) );
}

TEST( ThresholdSynth, WeightBoxRespected )
{
  /* x0 x1 + x2: x2 must outweigh either of x0, x1 */
  auto p = single( "00011111" );
  p.max_weight = 1u;
  EXPECT_FALSE( solve_threshold( p ) );
  p.max_weight = 2u;
  EXPECT_TRUE( solve_threshold( p ) );
}

TEST( ThresholdSynth, Monotonicity )
{
  EXPECT_TRUE( is_monotone( truth_table_from_string( "00011111" ) ) );
  EXPECT_FALSE( is_monotone( truth_table_from_string( "0110" ) ) );
  EXPECT_FALSE( is_monotone( truth_table_from_string( "1110" ) ) );
}

TEST( ThresholdSynth, RealizationCounterexample )
{
  /* AND at ctrl 0 disagrees with OR first at x0=1, x1=0 */
  auto const r = validate_realization( build_gate( gate_kind::poly_and_or ), truth_table_from_string( "0111" ), truth_table_from_string( "0001" ) );
  EXPECT_FALSE( r.pass );
  EXPECT_EQ( r.input, 1u );
  EXPECT_FALSE( r.ctrl );
}

TEST( ThresholdSynth, RealizationPassesForAlternativeWeights )
{
  auto const g = make_generic( { 2, 2 }, 2, 4, 2 );
  EXPECT_TRUE( validate_realization( g, truth_table_from_string( "0001" ), truth_table_from_string( "0111" ) ).pass );
}

TEST( ThresholdSynth, RealizationArityMismatch )
{
  EXPECT_THROW( validate_realization( build_gate( gate_kind::ct_and ), truth_table_from_string( "00000001" ) ), contract_error );
}

TEST( ThresholdSynth, ThreeInputFunctionsSoundAndComplete )
{
  /* every monotone function of at most three variables is a threshold function */
  for ( uint32_t bits = 1u; bits < 255u; ++bits )
  {
    auto const tt = table_of( 3u, [bits]( uint64_t x ) { return ( bits >> x ) & 1u; } );
    bool monotone = true;
    for ( uint64_t x = 0u; x < 8u; ++x )
    {
      for ( uint64_t y = 0u; y < 8u; ++y )
      {
        if ( ( x & y ) == x && tt[x] > tt[y] )
          monotone = false;
      }
    }
    auto const s = solve_threshold( synth_problem{ tt, std::nullopt } );
    EXPECT_EQ( s.has_value(), monotone ) << to_string( tt );
    if ( !s )
      continue;
    gate_spec const g{ gate_kind::generic_ct, s->weights, s->margin, 2u };
    EXPECT_TRUE( validate_realization( g, tt ).pass ) << to_string( tt );
  }
}
