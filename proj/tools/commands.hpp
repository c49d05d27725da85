/*!
  \file commands.hpp
  \brief Implementation of the `ctpoly` subcommands

  Every command returns a `run_report`; `main` only parses arguments and
  prints. Exit codes: 0 success, 1 functional failure (mismatch, infeasible,
  unrecoverable), 2 usage or I/O error.
*/

#pragma once

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <ctpoly/ctpoly.hpp>

namespace ctpoly::cli
{

using json = nlohmann::json;

enum exit_code : int
{
  exit_ok = 0,
  exit_failure = 1,
  exit_usage = 2
};

enum class report_format
{
  text,
  machine
};

struct run_report
{
  std::string command;
  json config = json::object();
  json payload = json::object();
  std::string text;
  int status{exit_ok};

  std::string render( report_format f ) const
  {
    if ( f == report_format::text )
      return text;
    json j;
    j["command"] = command;
    j["config"] = config;
    j["results"] = payload;
    j["exit_status"] = status;
    return j.dump( 2 ) + "\n";
  }
};

/*! \brief Usage or I/O problem; reported with exit status 2 */
struct usage_error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

inline std::string read_file( std::string const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw usage_error( "cannot open '" + path + "'" );
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline sim_mode parse_mode( std::string const& name )
{
  if ( name == "discrete" )
    return discrete_mode{};
  if ( name == "analog" )
    return analog_mode{};
  throw usage_error( "unknown mode '" + name + "' (expected discrete|analog)" );
}

inline std::string assignment_string( assignment const& a )
{
  std::string s;
  for ( auto const& [net, v] : a )
    s += ( s.empty() ? "" : " " ) + net + "=" + ( v ? "1" : "0" );
  return s;
}

inline json assignment_json( assignment const& a )
{
  json j = json::object();
  for ( auto const& [net, v] : a )
    j[net] = v ? 1 : 0;
  return j;
}

/*! \brief `C1=0,C2=1` style list */
inline assignment parse_assignment_list( std::string const& text )
{
  assignment a;
  if ( text.empty() )
    return a;
  for ( auto item : detail::split( text, ',' ) )
  {
    auto const eq = item.find( '=' );
    auto const name = eq == std::string_view::npos ? std::string_view{} : item.substr( 0u, eq );
    auto const bit = eq == std::string_view::npos ? std::string_view{} : item.substr( eq + 1u );
    if ( !is_identifier( name ) || ( bit != "0" && bit != "1" ) )
      throw usage_error( "bad assignment '" + std::string( item ) + "' (expected name=0|1)" );
    a[std::string( name )] = bit == "1";
  }
  return a;
}

namespace detail
{

/* builtin single-output functions, LSB-first over the netlist inputs in declared order */
inline std::map<std::string, std::string> const& builtin_tables()
{
  static std::map<std::string, std::string> const tables{
      { "and2", "0001" }, { "or2", "0111" }, { "nand2", "1110" }, { "nor2", "1000" },
      { "and3", "00000001" }, { "or3", "01111111" }, { "ao21", "00011111" }, { "oa21", "00000111" }, { "aoi21", "11100000" } };
  return tables;
}

inline output_oracle table_oracle( netlist const& n, std::map<std::string, truth_table> const& per_port )
{
  for ( auto const& [port, tt] : per_port )
  {
    if ( tt.size() != ( std::size_t{1} << n.inputs.size() ) )
      throw usage_error( "truth table for '" + port + "' has " + std::to_string( tt.size() ) + " entries, netlist has " +
                         std::to_string( n.inputs.size() ) + " inputs" );
    if ( std::none_of( n.outputs.begin(), n.outputs.end(), [&]( auto const& o ) { return o.port == port; } ) )
      throw usage_error( "netlist has no output port '" + port + "'" );
  }
  auto const inputs = n.inputs;
  return [inputs, per_port]( assignment const& in ) {
    std::size_t idx = 0u;
    for ( std::size_t i = 0u; i < inputs.size(); ++i )
      idx |= std::size_t{ in.at( inputs[i] ) } << i;
    assignment out;
    for ( auto const& [port, tt] : per_port )
      out[port] = tt[idx] != 0u;
    return out;
  };
}

inline std::map<std::string, truth_table> parse_table_file( std::string const& text )
{
  std::map<std::string, truth_table> tables;
  for ( auto raw : ctpoly::detail::split( text, '\n' ) )
  {
    if ( auto hash = raw.find( '#' ); hash != std::string_view::npos )
      raw = raw.substr( 0u, hash );
    auto const line = ctpoly::detail::trim( raw );
    if ( line.empty() )
      continue;
    auto const eq = line.find( '=' );
    if ( eq == std::string_view::npos || !is_identifier( line.substr( 0u, eq ) ) )
      throw usage_error( "truth-table file: expected '<port>=<bits>', got '" + std::string( line ) + "'" );
    try
    {
      tables[std::string( line.substr( 0u, eq ) )] = truth_table_from_string( line.substr( eq + 1u ) );
    }
    catch ( contract_error const& e )
    {
      throw usage_error( std::string( "truth-table file: " ) + e.what() );
    }
  }
  if ( tables.empty() )
    throw usage_error( "truth-table file defines no outputs" );
  return tables;
}

inline json verify_json( verify_report const& r )
{
  json failures = json::array();
  for ( auto const& f : r.failures )
    failures.push_back( { { "inputs", assignment_json( f.inputs ) }, { "expected", assignment_json( f.expected ) }, { "actual", assignment_json( f.actual ) } } );
  return { { "total", r.total }, { "passed", r.passed }, { "failures", failures } };
}

inline std::string verify_text( verify_report const& r )
{
  std::ostringstream os;
  os << "passed " << r.passed << "/" << r.total << "\n";
  for ( auto const& f : r.failures )
    os << "  FAIL " << assignment_string( f.inputs ) << " : expected " << assignment_string( f.expected ) << " got " << assignment_string( f.actual ) << "\n";
  return os.str();
}

inline std::string percent( double v )
{
  std::ostringstream os;
  os << static_cast<long>( std::lround( v * 100.0 ) ) << "%";
  return os.str();
}

} // namespace detail

struct verify_options
{
  std::string netlist_path;
  std::string ctrls;
  std::optional<std::string> oracle;
  std::optional<std::string> table_path;
  std::string mode{"discrete"};
};

inline run_report cmd_verify( verify_options const& opt )
{
  run_report r;
  r.command = "verify";
  r.config = { { "netlist", opt.netlist_path }, { "ctrl", opt.ctrls }, { "mode", opt.mode } };
  auto const n = parse_netlist( read_file( opt.netlist_path ) );
  auto const mode = parse_mode( opt.mode );
  auto const ctrls = parse_assignment_list( opt.ctrls );

  output_oracle oracle;
  if ( opt.oracle.has_value() == opt.table_path.has_value() )
    throw usage_error( "verify needs exactly one of --oracle or --table" );
  if ( opt.oracle )
  {
    r.config["oracle"] = *opt.oracle;
    if ( auto it = detail::builtin_tables().find( *opt.oracle ); it != detail::builtin_tables().end() )
    {
      if ( n.outputs.size() != 1u )
        throw usage_error( "builtin oracle '" + *opt.oracle + "' needs a single-output netlist" );
      oracle = detail::table_oracle( n, { { n.outputs.front().port, truth_table_from_string( it->second ) } } );
    }
    else if ( opt.oracle->starts_with( "msa-" ) && msa_mode_from_string( opt.oracle->substr( 4u ) ) )
    {
      oracle = msa_output_oracle( *msa_mode_from_string( opt.oracle->substr( 4u ) ) );
    }
    else
    {
      throw usage_error( "unknown oracle '" + *opt.oracle + "'" );
    }
  }
  else
  {
    r.config["table"] = *opt.table_path;
    oracle = detail::table_oracle( n, detail::parse_table_file( read_file( *opt.table_path ) ) );
  }

  simulator const sim( n );
  verify_report rep;
  try
  {
    rep = exhaustive_verify( sim, ctrls, oracle, mode );
  }
  catch ( std::out_of_range const& )
  {
    throw usage_error( "oracle does not match the netlist's input names" );
  }
  r.payload = detail::verify_json( rep );
  r.text = detail::verify_text( rep );
  r.status = rep.all_passed() ? exit_ok : exit_failure;
  return r;
}

struct synth_options
{
  std::string f0;
  std::optional<std::string> f1;
  uint32_t max_weight{default_max_weight};
};

inline run_report cmd_synth( synth_options const& opt )
{
  run_report r;
  r.command = "synth";
  r.config = { { "f0", opt.f0 }, { "max_weight", opt.max_weight } };
  synth_problem p;
  try
  {
    p.f0 = truth_table_from_string( opt.f0 );
    if ( opt.f1 )
    {
      r.config["f1"] = *opt.f1;
      p.f1 = truth_table_from_string( *opt.f1 );
    }
  }
  catch ( contract_error const& e )
  {
    throw usage_error( e.what() );
  }
  p.max_weight = opt.max_weight;

  std::optional<gate_spec> spec;
  try
  {
    if ( p.f1 )
    {
      spec = solve_polymorphic( p );
    }
    else if ( auto sol = solve_threshold( p ) )
    {
      spec = gate_spec{ gate_kind::generic_ct, sol->weights, sol->margin, 2u };
    }
  }
  catch ( contract_error const& e )
  {
    throw usage_error( e.what() );
  }

  if ( !spec )
  {
    r.payload = { { "status", "infeasible" } };
    r.text = "infeasible: no realization with weights <= " + std::to_string( opt.max_weight ) + "\n";
    r.status = exit_failure;
    return r;
  }
  std::ostringstream os;
  os << "weights ";
  for ( std::size_t i = 0u; i < spec->weights.data.size(); ++i )
    os << ( i ? "," : "" ) << spec->weights.data[i];
  if ( p.f1 )
    os << " ctrl " << spec->weights.ctrl;
  os << " theta " << spec->margin.theta << "\n";
  r.payload = { { "status", "found" }, { "weights", spec->weights.data }, { "ctrl_weight", spec->weights.ctrl }, { "theta", spec->margin.theta } };
  r.text = os.str();
  return r;
}

inline std::string census_text( netlist_census const& c )
{
  std::ostringstream os;
  os << std::left << std::setw( 10 ) << "block" << std::right << std::setw( 7 ) << "gates" << std::setw( 11 ) << "crosstalk"
     << std::setw( 13 ) << "polymorphic" << std::setw( 11 ) << "inverters" << std::setw( 13 ) << "transistors" << "\n";
  auto row = [&os]( std::string const& name, census_entry const& e ) {
    os << std::left << std::setw( 10 ) << name << std::right << std::setw( 7 ) << e.gates << std::setw( 11 ) << e.crosstalk_gates
       << std::setw( 13 ) << e.polymorphic_gates << std::setw( 11 ) << e.inverters << std::setw( 13 ) << e.transistors << "\n";
  };
  for ( auto const& [name, e] : c.blocks )
    row( name, e );
  row( "total", c.total );
  return os.str();
}

inline json census_json( netlist_census const& c )
{
  auto entry = []( census_entry const& e ) {
    return json{ { "gates", e.gates }, { "crosstalk_gates", e.crosstalk_gates }, { "polymorphic_gates", e.polymorphic_gates },
                 { "inverters", e.inverters }, { "transistors", e.transistors } };
  };
  json blocks = json::array();
  for ( auto const& [name, e] : c.blocks )
  {
    auto j = entry( e );
    j["block"] = name;
    blocks.push_back( j );
  }
  return { { "blocks", blocks }, { "total", entry( c.total ) } };
}

struct msa_options
{
  std::string action;
  std::string mode{"discrete"};
};

inline run_report cmd_msa( msa_options const& opt )
{
  run_report r;
  r.command = "msa " + opt.action;
  r.config = { { "action", opt.action }, { "mode", opt.mode } };
  auto const n = build_msa();

  if ( opt.action == "export" )
  {
    r.text = serialize( n );
    r.payload = { { "netlist", r.text } };
    return r;
  }

  if ( opt.action == "verify" )
  {
    auto const mode = parse_mode( opt.mode );
    simulator const sim( n );
    std::ostringstream os;
    uint64_t total = 0u, passed = 0u;
    json per_mode = json::object();
    for ( auto m : all_msa_modes )
    {
      auto const rep = exhaustive_verify( sim, msa_ctrls( m ), msa_output_oracle( m ), mode );
      total += rep.total;
      passed += rep.passed;
      per_mode[std::string( to_string( m ) )] = detail::verify_json( rep );
      os << to_string( m ) << ": " << detail::verify_text( rep );
    }
    os << "total: passed " << passed << "/" << total << "\n";
    r.payload = { { "total", total }, { "passed", passed }, { "modes", per_mode } };
    r.text = os.str();
    r.status = passed == total ? exit_ok : exit_failure;
    return r;
  }

  if ( opt.action == "census" )
  {
    auto const c = census( n );
    auto const baseline = total_transistors( build_msa_baseline() );
    using ref = msa_reference_figures;
    std::ostringstream os;
    os << census_text( c );
    os << "\npublished reference figures: " << ref::gates << " gates, " << ref::crosstalk_gates << " crosstalk, "
       << ref::polymorphic_gates << " polymorphic, " << ref::inverters << " inverters, " << ref::transistors << " transistors\n";
    auto const control = std::find_if( c.blocks.begin(), c.blocks.end(), []( auto const& b ) { return b.first == "control"; } );
    uint32_t const control_t = control == c.blocks.end() ? 0u : control->second.transistors;
    os << "computed: " << c.total.transistors << " transistors (" << c.total.transistors - control_t << " without control circuitry, "
       << control_t << " in control)\n";
    os << "fixed-function baseline (three circuits + output mux, same accounting): " << baseline << " transistors\n";
    auto const deviation = static_cast<double>( c.total.transistors ) / ref::transistors - 1.0;
    os << "deviation from reference: " << std::showpos << static_cast<int>( c.total.transistors ) - static_cast<int>( ref::transistors )
       << " transistors (" << std::fixed << std::setprecision( 1 ) << deviation * 100.0 << "%)" << std::noshowpos
       << "; the reference gate list is not published, this block uses one mode-gated term per output bit and mode\n";
    r.payload = census_json( c );
    r.payload["deviation_percent"] = deviation * 100.0;
    r.payload["reference"] = { { "gates", ref::gates }, { "crosstalk_gates", ref::crosstalk_gates }, { "polymorphic_gates", ref::polymorphic_gates },
                               { "inverters", ref::inverters }, { "transistors", ref::transistors } };
    r.payload["baseline_transistors"] = baseline;
    r.text = os.str();
    return r;
  }

  throw usage_error( "unknown msa action '" + opt.action + "' (expected export|verify|census)" );
}

struct faults_options
{
  std::size_t blocks{3};
  std::optional<std::string> program_path;
  std::optional<std::string> schedule_path;
  std::string rediscover{"never"};
  std::string mode{"discrete"};
};

inline std::optional<std::size_t> parse_rediscover( std::string const& s )
{
  if ( s == "never" )
    return std::nullopt;
  auto const v = ctpoly::detail::parse_uint( s );
  if ( !v || *v == 0u )
    throw usage_error( "--rediscover-every expects a positive integer or 'never'" );
  return *v;
}

inline run_report cmd_faults( faults_options const& opt )
{
  run_report r;
  r.command = "faults";
  r.config = { { "blocks", opt.blocks }, { "rediscover_every", opt.rediscover }, { "mode", opt.mode } };
  if ( opt.blocks == 0u )
    throw usage_error( "--blocks must be positive" );

  std::vector<instruction> program;
  std::vector<scheduled_fault> schedule;
  try
  {
    program = opt.program_path ? parse_program( read_file( *opt.program_path ) ) : mixed_program( 30u );
    if ( opt.schedule_path )
      schedule = parse_fault_schedule( read_file( *opt.schedule_path ) );
  }
  catch ( format_error const& e )
  {
    throw usage_error( e.what() );
  }
  r.config["program"] = opt.program_path.value_or( "builtin:mixed30" );
  r.config["schedule"] = opt.schedule_path.value_or( "" );

  auto bank = block_bank::msa_bank( opt.blocks );
  for ( auto const& s : schedule )
  {
    if ( !bank.find( s.block ) )
      throw usage_error( "schedule names unknown block '" + s.block + "'" );
  }
  workload_config cfg;
  cfg.rediscover_every = parse_rediscover( opt.rediscover );
  cfg.mode = parse_mode( opt.mode );

  workload_result res;
  try
  {
    res = run_workload( program, bank, cfg, schedule );
  }
  catch ( sim_error const& e )
  {
    throw usage_error( e.what() );
  }

  std::ostringstream os;
  json results = json::array();
  std::size_t correct = 0u, unrecoverable = 0u, wrong = 0u;
  for ( std::size_t i = 0u; i < program.size(); ++i )
  {
    auto const& in = program[i];
    auto const& out = res.results[i];
    auto const expected = msa_oracle( in.op, in.a, in.b );
    json j{ { "id", in.id }, { "op", to_string( in.op ) }, { "a", bits_string( in.a, 2u ) }, { "b", bits_string( in.b, 2u ) },
            { "expected", bits_string( expected, 4u ) } };
    os << "#" << in.id << " " << to_string( in.op ) << " " << bits_string( in.a, 2u ) << " " << bits_string( in.b, 2u ) << " -> ";
    if ( out.unrecoverable() )
    {
      ++unrecoverable;
      j["result"] = nullptr;
      j["status"] = "unrecoverable";
      os << "UNRECOVERABLE\n";
    }
    else
    {
      bool const ok = *out.value == expected;
      ok ? ++correct : ++wrong;
      j["result"] = bits_string( *out.value, 4u );
      j["block"] = res.final_bank.blocks()[*out.block].name;
      j["status"] = ok ? "correct" : "wrong";
      os << bits_string( *out.value, 4u ) << " via " << res.final_bank.blocks()[*out.block].name << ( ok ? "" : "  WRONG (expected " + bits_string( expected, 4u ) + ")" ) << "\n";
    }
    results.push_back( j );
  }
  json log = json::array();
  std::ostringstream log_lines;
  for ( auto const& e : res.log )
  {
    json j{ { "time", e.time }, { "kind", e.kind }, { "detail", e.detail } };
    log.push_back( j );
    log_lines << j.dump() << "\n";
  }
  os << "summary: " << correct << " correct, " << wrong << " wrong, " << unrecoverable << " unrecoverable of " << program.size() << "\n";
  os << "event log:\n" << log_lines.str();

  r.payload = { { "instructions", results }, { "log", log },
                { "summary", { { "correct", correct }, { "wrong", wrong }, { "unrecoverable", unrecoverable } } } };
  r.text = os.str();
  r.status = ( wrong == 0u && unrecoverable == 0u ) ? exit_ok : exit_failure;
  return r;
}

/*! \brief One Table 2 row: computed crosstalk count beside the reported columns */
struct table2_row
{
  std::string name;
  uint32_t computed;
  uint32_t reported_crosstalk;
  uint32_t reported_cmos;
  uint32_t reported_nwfet;
};

inline std::vector<table2_row> table2_rows()
{
  return {
      { "AND2-OR2", transistor_count( build_gate( gate_kind::poly_and_or ) ), 5u, 18u, 6u },
      { "AO21-OA21", transistor_count( build_gate( gate_kind::poly_oa21_ao21 ) ), 5u, 22u, 8u },
      { "AND3-AO21", transistor_count( build_gate( gate_kind::poly_and3_ao21 ) ), 5u, 22u, 12u },
      { "AO21-OR3", transistor_count( build_gate( gate_kind::poly_ao21_or3 ) ), 5u, 22u, 12u },
      { "Multiplier-Sorter-Adder", total_transistors( build_msa() ), 155u, 408u, 216u },
  };
}

inline double reduction( uint32_t ours, uint32_t theirs )
{
  return 1.0 - static_cast<double>( ours ) / static_cast<double>( theirs );
}

inline run_report cmd_table2()
{
  run_report r;
  r.command = "table2";
  std::ostringstream os;
  os << std::left << std::setw( 25 ) << "row" << std::right << std::setw( 10 ) << "computed" << std::setw( 16 ) << "crosstalk(rep)"
     << std::setw( 11 ) << "CMOS(rep)" << std::setw( 12 ) << "NWFET(rep)" << std::setw( 20 ) << "vs CMOS rep/comp" << std::setw( 21 )
     << "vs NWFET rep/comp" << "\n";
  json rows = json::array();
  for ( auto const& row : table2_rows() )
  {
    auto const rep_cmos = reduction( row.reported_crosstalk, row.reported_cmos );
    auto const rep_nwfet = reduction( row.reported_crosstalk, row.reported_nwfet );
    auto const comp_cmos = reduction( row.computed, row.reported_cmos );
    auto const comp_nwfet = reduction( row.computed, row.reported_nwfet );
    os << std::left << std::setw( 25 ) << row.name << std::right << std::setw( 10 ) << row.computed << std::setw( 16 ) << row.reported_crosstalk
       << std::setw( 11 ) << row.reported_cmos << std::setw( 12 ) << row.reported_nwfet << std::setw( 20 )
       << detail::percent( rep_cmos ) + " / " + detail::percent( comp_cmos ) << std::setw( 21 )
       << detail::percent( rep_nwfet ) + " / " + detail::percent( comp_nwfet ) << "\n";
    rows.push_back( { { "row", row.name }, { "computed_crosstalk", row.computed }, { "reported_crosstalk", row.reported_crosstalk },
                      { "reported_cmos", row.reported_cmos }, { "reported_nwfet", row.reported_nwfet },
                      { "reduction_vs_cmos_reported", detail::percent( rep_cmos ) }, { "reduction_vs_cmos_computed", detail::percent( comp_cmos ) },
                      { "reduction_vs_nwfet_reported", detail::percent( rep_nwfet ) }, { "reduction_vs_nwfet_computed", detail::percent( comp_nwfet ) } } );
  }
  os << "(rep) = published figures, not modeled; computed = this library's gate accounting; reductions are 1 - crosstalk/other\n";
  r.payload = { { "rows", rows } };
  r.text = os.str();
  return r;
}

struct simulate_options
{
  std::string netlist_path;
  std::string vectors_path;
  std::string mode{"discrete"};
};

inline run_report cmd_simulate( simulate_options const& opt )
{
  run_report r;
  r.command = "simulate";
  r.config = { { "netlist", opt.netlist_path }, { "vectors", opt.vectors_path }, { "mode", opt.mode } };
  auto const n = parse_netlist( read_file( opt.netlist_path ) );
  simulator const sim( n );
  sim_trace trace;
  try
  {
    trace = sim.run_sequence( parse_vectors( read_file( opt.vectors_path ), n ), parse_mode( opt.mode ) );
  }
  catch ( sim_error const& e )
  {
    throw usage_error( e.what() );
  }

  std::ostringstream os;
  json cycles = json::array();
  for ( std::size_t c = 0u; c < trace.size(); ++c )
  {
    auto const& rec = trace[c];
    assignment outs( rec.outputs.begin(), rec.outputs.end() );
    os << "cycle " << c << ": " << assignment_string( rec.inputs ) << ( rec.ctrls.empty() ? "" : " | " ) << assignment_string( rec.ctrls ) << " -> ";
    std::string out_str;
    for ( auto const& [port, v] : rec.outputs )
      out_str += ( out_str.empty() ? "" : " " ) + port + "=" + ( v ? "1" : "0" );
    os << out_str << "\n";
    json levels = json::object();
    for ( std::size_t g = 0u; g < n.gates.size(); ++g )
    {
      auto const& l = rec.victim_levels[g];
      levels[n.gates[g].name] = std::to_string( l.numerator() ) + "/" + std::to_string( l.denominator() );
    }
    json outputs = json::array();
    for ( auto const& [port, v] : rec.outputs )
      outputs.push_back( { { "port", port }, { "value", v ? 1 : 0 } } );
    cycles.push_back( { { "inputs", assignment_json( rec.inputs ) }, { "ctrls", assignment_json( rec.ctrls ) }, { "victim_levels", levels },
                        { "nets", assignment_json( rec.nets ) }, { "outputs", outputs } } );
  }
  r.payload = { { "cycles", cycles } };
  r.text = os.str();
  return r;
}

} // namespace ctpoly::cli
