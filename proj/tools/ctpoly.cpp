#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace ctpoly;
using namespace ctpoly::cli;

int main( int argc, char** argv )
{
  CLI::App app{ "ctpoly: crosstalk polymorphic logic simulation, synthesis and fault-recovery toolkit" };
  app.require_subcommand( 1 );
  app.fallthrough();

  std::string format = "text";
  std::string out_path;
  app.add_option( "--format", format, "Report format" )->check( CLI::IsMember( { "text", "machine" } ) );
  app.add_option( "--out", out_path, "Write the report to this file instead of stdout" );

  verify_options vopt;
  auto* verify = app.add_subcommand( "verify", "Exhaustively compare a netlist against an oracle" );
  verify->add_option( "netlist", vopt.netlist_path, "Netlist file" )->required();
  verify->add_option( "--ctrl", vopt.ctrls, "Control assignment, e.g. Ct=1 or C1=0,C2=1" );
  verify->add_option( "--oracle", vopt.oracle,
                      "Builtin oracle: and2 or2 nand2 nor2 and3 or3 ao21 oa21 aoi21 (single output), msa-mul msa-sort msa-add" );
  verify->add_option( "--table", vopt.table_path,
                      "Truth-table file: lines '<port>=<bits>', LSB-first (index = binary value of the inputs, first declared input = bit 0)" );
  verify->add_option( "--mode", vopt.mode, "discrete|analog" );

  synth_options sopt;
  auto* synth = app.add_subcommand( "synth", "Search integer coupling weights for a function (pair)" );
  synth->add_option( "f0", sopt.f0, "Function at ctrl=0 as an LSB-first truth-table string, e.g. 0001 for AND2" )->required();
  synth->add_option( "f1", sopt.f1, "Function at ctrl=1 (polymorphic synthesis)" );
  synth->add_option( "--max-weight", sopt.max_weight, "Largest coupling weight searched" )->check( CLI::Range( 1u, 64u ) );

  msa_options mopt;
  auto* msa = app.add_subcommand( "msa", "Multiplier/Sorter/Adder block: export, verify or census" );
  msa->add_option( "action", mopt.action, "export|verify|census" )->required()->check( CLI::IsMember( { "export", "verify", "census" } ) );
  msa->add_option( "--mode", mopt.mode, "discrete|analog" );

  faults_options fopt;
  auto* faults = app.add_subcommand( "faults", "Run a workload over a bank of blocks with fault discovery and recovery" );
  faults->add_option( "--blocks", fopt.blocks, "Number of blocks in the bank" );
  faults->add_option( "--program", fopt.program_path, "Program file: '<mul|sort|add> <a:2 bits> <b:2 bits>' per line" );
  faults->add_option( "--schedule", fopt.schedule_path, "Fault schedule: '<instr-id> <dead|stuck-at-0:net|stuck-at-1:net|dead-gate:g|dead-block:b> <block>'" );
  faults->add_option( "--rediscover-every", fopt.rediscover, "Re-run discovery every N instructions, or 'never'" );
  faults->add_option( "--mode", fopt.mode, "discrete|analog" );

  app.add_subcommand( "table2", "Transistor-count comparison table" );

  simulate_options simopt;
  auto* simulate = app.add_subcommand( "simulate", "Run a vector file through a netlist and print the trace" );
  simulate->add_option( "netlist", simopt.netlist_path, "Netlist file" )->required();
  simulate->add_option( "vectors", simopt.vectors_path, "Vector file: 'name=bit' pairs, one cycle per line" )->required();
  simulate->add_option( "--mode", simopt.mode, "discrete|analog" );

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::CallForHelp const& e )
  {
    return app.exit( e );
  }
  catch ( CLI::ParseError const& e )
  {
    app.exit( e );
    return exit_usage;
  }

  try
  {
    run_report report;
    if ( *verify )
      report = cmd_verify( vopt );
    else if ( *synth )
      report = cmd_synth( sopt );
    else if ( *msa )
      report = cmd_msa( mopt );
    else if ( *faults )
      report = cmd_faults( fopt );
    else if ( *simulate )
      report = cmd_simulate( simopt );
    else
      report = cmd_table2();

    auto const text = report.render( format == "machine" ? report_format::machine : report_format::text );
    if ( out_path.empty() )
    {
      std::cout << text;
    }
    else
    {
      std::ofstream out( out_path, std::ios::binary );
      if ( !out )
      {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return exit_usage;
      }
      out << text;
    }
    return report.status;
  }
  catch ( usage_error const& e )
  {
    std::cerr << "error: " << e.what() << "\n";
  }
  catch ( netlist_error const& e )
  {
    for ( auto const& d : e.diagnostics() )
      std::cerr << "error: " << to_string( d ) << "\n";
  }
  catch ( std::exception const& e )
  {
    std::cerr << "error: " << e.what() << "\n";
  }
  return exit_usage;
}
