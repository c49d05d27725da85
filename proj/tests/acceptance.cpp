/* Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure. */

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <ctpoly/ctpoly.hpp>

#include "commands.hpp"
#include "test_support.hpp"

using namespace ctpoly;
using namespace ctpoly::test;

namespace
{

struct outcome
{
  bool pass{true};
  std::string note;

  void require( bool cond, std::string const& what )
  {
    if ( !cond && pass )
      note = what;
    pass = pass && cond;
  }
};

using clock_type = std::chrono::steady_clock;

bool report( int id, std::string const& title, std::function<outcome()> const& body, double limit_s )
{
  auto const t0 = clock_type::now();
  outcome o;
  try
  {
    o = body();
  }
  catch ( std::exception const& e )
  {
    o.pass = false;
    o.note = std::string( "exception: " ) + e.what();
  }
  double const secs = std::chrono::duration<double>( clock_type::now() - t0 ).count();
  if ( limit_s > 0.0 && secs >= limit_s )
  {
    o.require( false, "runtime " + std::to_string( secs ) + " s over the " + std::to_string( limit_s ) + " s limit" );
  }
  std::printf( "[%s] %d %s (%.3f s%s)%s%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs,
               limit_s > 0.0 ? ( ", limit " + std::to_string( static_cast<int>( limit_s ) ) + " s" ).c_str() : "", o.note.empty() ? "" : ": ",
               o.note.c_str() );
  return o.pass;
}

/* one-gate netlist around a library gate, inputs x0.. and ctrl Ct when needed */
netlist wrap_gate( gate_spec const& spec )
{
  netlist n;
  gate_instance g;
  g.name = "g";
  g.spec = spec;
  g.out_net = "y";
  for ( uint32_t i = 0u; i < spec.arity(); ++i )
  {
    n.inputs.push_back( "x" + std::to_string( i ) );
    g.in_nets.push_back( n.inputs.back() );
  }
  if ( spec.has_ctrl() )
  {
    n.ctrls.push_back( "Ct" );
    g.ctrl_net = "Ct";
  }
  n.gates.push_back( g );
  n.outputs.push_back( { "Y", "y" } );
  return n;
}

/* mismatches of a wrapped gate against fn over every input, given ctrl value */
int mismatches( simulator const& sim, std::function<bool( uint64_t )> const& fn, std::optional<bool> ctrl, sim_mode const& mode )
{
  auto const& inputs = sim.network().inputs;
  int bad = 0;
  for ( uint64_t x = 0u; x < ( uint64_t{1} << inputs.size() ); ++x )
  {
    assignment in;
    for ( std::size_t i = 0u; i < inputs.size(); ++i )
      in[inputs[i]] = bit( x, static_cast<uint32_t>( i ) );
    assignment ct;
    if ( ctrl )
      ct["Ct"] = *ctrl;
    if ( sim.run_cycle( in, ct, mode ).output( "Y" ) != fn( x ) )
      ++bad;
  }
  return bad;
}

outcome criterion_polymorphic_gates()
{
  outcome o;
  struct pair_def
  {
    gate_kind kind;
    std::function<bool( uint64_t )> f0, f1;
  };
  std::vector<pair_def> const defs{ { gate_kind::poly_and_or, f_and2, f_or2 },
                                    { gate_kind::poly_oa21_ao21, f_oa21, f_ao21 },
                                    { gate_kind::poly_and3_ao21, f_and3, f_ao21 },
                                    { gate_kind::poly_ao21_or3, f_ao21, f_or3 } };
  int total = 0, cases = 0;
  for ( auto const& d : defs )
  {
    simulator const sim( wrap_gate( build_gate( d.kind ) ) );
    for ( auto const& mode : { sim_mode{ discrete_mode{} }, sim_mode{ analog_mode{} } } )
    {
      auto const bad = mismatches( sim, d.f0, false, mode ) + mismatches( sim, d.f1, true, mode );
      total += bad;
      cases += 2 << sim.network().inputs.size();
      o.require( bad == 0, std::string( to_string( d.kind ) ) + " mismatches" );
    }
  }
  o.note = o.pass ? std::to_string( cases ) + " cases, " + std::to_string( total ) + " mismatches" : o.note;
  return o;
}

outcome criterion_fixed_gates()
{
  outcome o;
  std::vector<std::pair<gate_kind, std::function<bool( uint64_t )>>> const defs{
      { gate_kind::ct_nand, []( uint64_t x ) { return !f_and2( x ); } },
      { gate_kind::ct_nor, []( uint64_t x ) { return !f_or2( x ); } },
      { gate_kind::ct_and, f_and2 },
      { gate_kind::ct_or, f_or2 },
      { gate_kind::ct_aoi21, []( uint64_t x ) { return !f_ao21( x ); } },
      { gate_kind::ct_ao21, f_ao21 } };
  int cases = 0;
  for ( auto const& [kind, fn] : defs )
  {
    simulator const sim( wrap_gate( build_gate( kind ) ) );
    for ( auto const& mode : { sim_mode{ discrete_mode{} }, sim_mode{ analog_mode{} } } )
    {
      o.require( mismatches( sim, fn, std::nullopt, mode ) == 0, std::string( to_string( kind ) ) + " mismatches" );
      cases += 1 << sim.network().inputs.size();
    }
  }
  /* first stage of AOI21 fires iff A + B + 2C reaches 2 */
  auto const aoi = build_gate( gate_kind::ct_aoi21 );
  for ( uint64_t x = 0u; x < 8u; ++x )
  {
    auto const charge = bit( x, 0 ) + bit( x, 1 ) + 2 * bit( x, 2 );
    o.require( fires( aoi.weights, aoi.margin, x, false ) == ( charge >= 2 ), "AOI21 margin at x=" + std::to_string( x ) );
  }
  if ( o.pass )
    o.note = std::to_string( cases ) + " cases, 0 mismatches; AOI21 margin checked on 8 vectors";
  return o;
}

outcome criterion_msa()
{
  outcome o;
  simulator const sim( build_msa() );
  int cases = 0;
  for ( auto m : all_msa_modes )
  {
    for ( uint8_t a = 0u; a < 4u; ++a )
    {
      for ( uint8_t b = 0u; b < 4u; ++b )
      {
        auto const y = msa_result( sim.run_cycle( msa_inputs( a, b ), msa_ctrls( m ) ) );
        o.require( y == msa_oracle( m, a, b ), std::string( to_string( m ) ) + " mismatch" );
        ++cases;
      }
    }
  }
  struct vec
  {
    msa_mode m;
    uint8_t a, b;
    char const* y;
  };
  std::vector<vec> const vectors{ { msa_mode::multiplier, 0b11, 0b10, "0110" }, { msa_mode::sorter, 0b11, 0b10, "1110" },
                                  { msa_mode::adder, 0b11, 0b10, "0101" },      { msa_mode::multiplier, 0b10, 0b01, "0010" },
                                  { msa_mode::sorter, 0b10, 0b01, "1100" },     { msa_mode::adder, 0b10, 0b01, "0011" } };
  for ( auto const& v : vectors )
  {
    auto const y = bits_string( msa_result( sim.run_cycle( msa_inputs( v.a, v.b ), msa_ctrls( v.m ) ) ), 4u );
    o.require( y == v.y, std::string( to_string( v.m ) ) + " " + bits_string( v.a, 2u ) + "," + bits_string( v.b, 2u ) + " gave " + y );
  }
  if ( o.pass )
    o.note = std::to_string( cases ) + " cases and 6 reference vectors exact";
  return o;
}

outcome criterion_accounting()
{
  outcome o;
  auto const rows = cli::table2_rows();
  for ( std::size_t i = 0u; i < 4u; ++i )
    o.require( rows[i].computed == 5u, rows[i].name + " computed " + std::to_string( rows[i].computed ) );

  auto const msa = build_msa();
  auto const c = census( msa );
  auto const poly = total_transistors( msa );
  auto const base = total_transistors( build_msa_baseline() );
  o.require( poly < base, "economy invariant violated" );
  double const ref = msa_reference_figures::transistors;
  o.require( std::abs( poly - ref ) <= 0.25 * ref, "count outside tolerance" );

  uint32_t itemized = 0u;
  bool has_control = false;
  for ( auto const& [name, e] : c.blocks )
  {
    itemized += e.transistors;
    has_control = has_control || ( name == "control" && e.transistors > 0u );
  }
  o.require( has_control && itemized == poly, "census does not itemize control circuitry" );

  auto const pct = []( uint32_t ours, uint32_t theirs ) { return std::lround( 100.0 * ( 1.0 - double( ours ) / theirs ) ); };
  auto const& m = rows[4];
  o.require( pct( m.reported_crosstalk, m.reported_cmos ) == 62, "CMOS reduction" );
  o.require( pct( m.reported_crosstalk, m.reported_nwfet ) == 28, "NWFET reduction" );

  std::ostringstream os;
  os << "gate pairs 5/5/5/5 T; block " << poly << " T vs reference " << ref << " (" << std::showpos << std::lround( 100.0 * ( poly / ref - 1.0 ) )
     << std::noshowpos << "%), baseline " << base << " T; reductions " << pct( m.reported_crosstalk, m.reported_cmos ) << "% / "
     << pct( m.reported_crosstalk, m.reported_nwfet ) << "%";
  if ( o.pass )
    o.note = os.str();
  return o;
}

outcome criterion_fault_recovery()
{
  outcome o;
  auto const program = mixed_program( 30u );
  workload_config cfg;
  cfg.rediscover_every = 1u;
  std::vector<std::string> const names{ "block1", "block2", "block3" };

  int workloads = 0;
  for ( std::size_t i = 0u; i < 3u; ++i )
  {
    for ( std::size_t j = i + 1u; j < 3u; ++j )
    {
      /* killed up front, and killed one by one mid-run */
      std::vector<std::vector<scheduled_fault>> const schedules{
          { { 0u, block_kill{}, names[i] }, { 0u, block_kill{}, names[j] } },
          { { 10u, block_kill{}, names[i] }, { 20u, block_kill{}, names[j] } } };
      for ( auto const& schedule : schedules )
      {
        auto const res = run_workload( program, block_bank::msa_bank( 3u ), cfg, schedule );
        ++workloads;
        for ( std::size_t k = 0u; k < program.size(); ++k )
        {
          auto const& r = res.results[k];
          o.require( !r.unrecoverable() && *r.value == msa_oracle( program[k].op, program[k].a, program[k].b ),
                     "wrong result with " + names[i] + "," + names[j] + " killed at instruction " + std::to_string( k ) );
        }
      }
    }
  }

  std::vector<scheduled_fault> all;
  for ( auto const& n : names )
    all.push_back( { 0u, block_kill{}, n } );
  auto const dead = run_workload( program, block_bank::msa_bank( 3u ), cfg, all );
  for ( auto const& r : dead.results )
    o.require( r.unrecoverable(), "instruction served with every block dead" );

  if ( o.pass )
    o.note = std::to_string( workloads ) + " two-dead workloads x 30 instructions all correct; all-dead: 30/30 unrecoverable";
  return o;
}

/* brute force over the full weight box: data weights 0..8 (not all zero), ctrl 1..8, theta 1..total */
bool oracle_feasible( truth_table const& f0, truth_table const& f1 )
{
  for ( uint32_t w1 = 0u; w1 <= 8u; ++w1 )
  {
    for ( uint32_t w2 = 0u; w2 <= 8u; ++w2 )
    {
      if ( w1 + w2 == 0u )
        continue;
      for ( uint32_t ct = 1u; ct <= 8u; ++ct )
      {
        for ( uint32_t theta = 1u; theta <= w1 + w2 + ct; ++theta )
        {
          bool ok = true;
          for ( uint32_t x = 0u; x < 4u && ok; ++x )
          {
            uint32_t const s = ( x & 1u ? w1 : 0u ) + ( x & 2u ? w2 : 0u );
            ok = ( s >= theta ) == ( f0[x] != 0u ) && ( s + ct >= theta ) == ( f1[x] != 0u );
          }
          if ( ok )
            return true;
        }
      }
    }
  }
  return false;
}

outcome criterion_synthesis()
{
  outcome o;
  int feasible = 0, degenerate = 0;
  for ( uint32_t a = 0u; a < 16u; ++a )
  {
    for ( uint32_t b = 0u; b < 16u; ++b )
    {
      auto const f0 = table_of( 2u, [a]( uint64_t x ) { return ( a >> x ) & 1u; } );
      auto const f1 = table_of( 2u, [b]( uint64_t x ) { return ( b >> x ) & 1u; } );
      auto const tag = to_string( f0 ) + "/" + to_string( f1 );
      if ( a == b )
      {
        bool threw = false;
        try
        {
          solve_polymorphic( { f0, f1 } );
        }
        catch ( degenerate_function_error const& )
        {
          threw = true;
        }
        o.require( threw, "equal pair " + tag + " not rejected" );
        ++degenerate;
        continue;
      }
      auto const spec = solve_polymorphic( { f0, f1 } );
      o.require( spec.has_value() == oracle_feasible( f0, f1 ), "feasibility disagrees on " + tag );
      if ( spec )
      {
        ++feasible;
        o.require( validate_realization( *spec, f0, f1 ).pass, "unsound realization for " + tag );
      }
    }
  }

  for ( auto k : polymorphic_kinds )
  {
    auto const ref = build_gate( k );
    auto const spec = solve_polymorphic( { gate_truth_table( ref, false ), gate_truth_table( ref, true ) } );
    o.require( spec && spec->weights == ref.weights && spec->margin.theta == ref.margin.theta,
               std::string( to_string( k ) ) + " not recovered with canonical weights" );
  }
  if ( o.pass )
    o.note = "240 pairs agree with brute force (" + std::to_string( feasible ) + " feasible), " + std::to_string( degenerate ) +
             " equal pairs rejected, 4 reference gates recovered";
  return o;
}

outcome criterion_properties()
{
  outcome o;
  std::mt19937 rng( 7007u );
  auto uniform = [&rng]( uint32_t lo, uint32_t hi ) { return std::uniform_int_distribution<uint32_t>( lo, hi )( rng ); };

  int const charge_cases = 10000;
  for ( int i = 0; i < charge_cases && o.pass; ++i )
  {
    coupling_weights w;
    w.data.resize( uniform( 1u, 5u ) );
    for ( auto& x : w.data )
      x = uniform( 0u, 8u );
    w.data[0] = uniform( 1u, 8u );
    w.ctrl = uniform( 0u, 8u );
    uint64_t const mask = uniform( 0u, ( 1u << w.data.size() ) - 1u );
    bool const ctrl = uniform( 0u, 1u );
    analog_params a;
    a.c_parasitic = rational( uniform( 0u, 30u ), uniform( 1u, 3u ) );
    auto const level = induced_level( w, mask, ctrl, a );
    o.require( level >= 0 && level <= 1, "level out of [0,1]" );
    auto const k = uniform( 0u, static_cast<uint32_t>( w.data.size() ) - 1u );
    o.require( induced_level( w, mask | ( uint64_t{1} << k ), ctrl, a ) >= level, "level not monotone in aggressors" );
    auto const s = uniform( 2u, 6u );
    coupling_weights scaled = w;
    for ( auto& x : scaled.data )
      x *= s;
    scaled.ctrl *= s;
    analog_params as = a;
    as.c_parasitic *= static_cast<int64_t>( s );
    o.require( induced_level( scaled, mask, ctrl, as ) == level, "level not scale invariant" );
  }

  int const netlist_cases = 300;
  for ( int i = 0; i < netlist_cases && o.pass; ++i )
  {
    auto const n = random_netlist( rng );
    o.require( parse_netlist( serialize( n ) ) == n, "round trip changed a netlist" );

    simulator const sim( n );
    auto const in = random_assignment( rng, n.inputs );
    auto const ct = random_assignment( rng, n.ctrls );
    auto const good = sim.run_cycle( in, ct );
    o.require( good == sim.run_cycle( in, ct ), "simulation not deterministic" );

    auto const& target = n.gates[uniform( 0u, static_cast<uint32_t>( n.gates.size() ) - 1u )].out_net;
    auto const bad = sim.run_cycle( in, ct, discrete_mode{}, { stuck_at{ target, !good.nets.at( target ) } } );
    auto const reach = fanout_closure( n, target );
    for ( auto const& [net, v] : good.nets )
      o.require( reach.contains( net ) || bad.nets.at( net ) == v, "fault escaped its fan-out cone" );
  }

  simulator const msa( build_msa() );
  for ( uint8_t x = 0u; x < 16u; ++x )
  {
    auto const y = msa_result( msa.run_cycle( msa_inputs( x >> 2, x & 3u ), msa_ctrls( msa_mode::sorter ) ) );
    o.require( y == 0b0000 || y == 0b1000 || y == 0b1100 || y == 0b1110 || y == 0b1111, "sorter output not a thermometer code" );
    for ( uint8_t b = 0u; b < 4u; ++b )
    {
      auto const x2 = uint8_t( x | ( 1u << b ) );
      auto const y2 = msa_result( msa.run_cycle( msa_inputs( x2 >> 2, x2 & 3u ), msa_ctrls( msa_mode::sorter ) ) );
      o.require( ( y2 & y ) == y, "sorter not monotone" );
    }
  }
  if ( o.pass )
    o.note = std::to_string( charge_cases ) + " charge cases, " + std::to_string( netlist_cases ) + " random netlists, 16 sorter inputs";
  return o;
}

} // namespace

int main()
{
  bool ok = true;
  ok &= report( 1, "polymorphic gates exhaustive, discrete and analog", criterion_polymorphic_gates, 1.0 );
  ok &= report( 2, "fixed gates exhaustive", criterion_fixed_gates, 0.0 );
  ok &= report( 3, "multiplier/sorter/adder block, 48 cases", criterion_msa, 1.0 );
  ok &= report( 4, "transistor accounting", criterion_accounting, 0.0 );
  ok &= report( 5, "fault recovery with two of three blocks dead", criterion_fault_recovery, 5.0 );
  ok &= report( 6, "synthesis over all 2-input function pairs", criterion_synthesis, 30.0 );
  ok &= report( 7, "property suites", criterion_properties, 0.0 );
  std::printf( "%s\n", ok ? "all criteria passed" : "some criteria FAILED" );
  return ok ? 0 : 1;
}
