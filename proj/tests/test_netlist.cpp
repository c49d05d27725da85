#include <algorithm>

#include <gtest/gtest.h>

#include <ctpoly/msa_block.hpp>
#include <ctpoly/netlist.hpp>

using namespace ctpoly;

namespace
{

netlist_errc error_of( std::string_view text )
{
  try
  {
    parse_netlist( text );
  }
  catch ( netlist_error const& e )
  {
    return e.code();
  }
  ADD_FAILURE() << "netlist was accepted:\n" << text;
  return netlist_errc::syntax;
}

constexpr std::string_view poly_and_or = R"(input A
input B
ctrl Ct
output Y=y
gate g1 kind=POLY_AND_OR in=A,B ctrl=Ct out=y
)";

} // namespace

TEST( Netlist, MinimalParse )
{
  auto const n = parse_netlist( poly_and_or );
  EXPECT_EQ( n.inputs, ( std::vector<std::string>{ "A", "B" } ) );
  EXPECT_EQ( n.ctrls, ( std::vector<std::string>{ "Ct" } ) );
  ASSERT_EQ( n.outputs.size(), 1u );
  EXPECT_EQ( n.outputs[0].port, "Y" );
  ASSERT_EQ( n.gates.size(), 1u );
  EXPECT_EQ( n.gates[0].spec, build_gate( gate_kind::poly_and_or ) );
  EXPECT_EQ( n.gates[0].ctrl_net, "Ct" );
  EXPECT_EQ( n.gates[0].block, top_block );
}

TEST( Netlist, CommentsAndBlankLines )
{
  auto const n = parse_netlist( "# header\n\ninput A   # trailing\ninput B\noutput Y=y\n  gate g kind=CT_NAND in=A,B out=y\n" );
  EXPECT_EQ( n.gates.size(), 1u );
}

TEST( Netlist, SelfLoopIsCycle )
{
  EXPECT_EQ( error_of( "input A\noutput Y=y\ngate g kind=CT_AND in=A,y out=y\n" ), netlist_errc::cycle );
}

TEST( Netlist, TwoGateCycle )
{
  EXPECT_EQ( error_of( "input A\ninput B\noutput Y=y\ngate g1 kind=CT_AND in=A,z out=y\ngate g2 kind=CT_OR in=y,B out=z\n" ),
             netlist_errc::cycle );
}

TEST( Netlist, GenericMissingParameters )
{
  EXPECT_EQ( error_of( "input A\ninput B\noutput Y=y\ngate g kind=GENERIC_CT in=A,B out=y weights=1,1 theta=2\n" ),
             netlist_errc::missing_parameter );
}

TEST( Netlist, NamedKindRejectsParameters )
{
  EXPECT_EQ( error_of( "input A\ninput B\noutput Y=y\ngate g kind=CT_AND in=A,B out=y theta=1\n" ), netlist_errc::syntax );
}

TEST( Netlist, UndefinedNet )
{
  EXPECT_EQ( error_of( "input A\noutput Y=y\ngate g kind=CT_AND in=A,Q out=y\n" ), netlist_errc::undefined_net );
  EXPECT_EQ( error_of( "input A\ninput B\noutput Y=nowhere\ngate g kind=CT_AND in=A,B out=y\n" ), netlist_errc::undefined_net );
}

TEST( Netlist, MultipleDrivers )
{
  EXPECT_EQ( error_of( "input A\ninput B\noutput Y=y\ngate g1 kind=CT_AND in=A,B out=y\ngate g2 kind=CT_OR in=A,B out=y\n" ),
             netlist_errc::multiple_drivers );
  EXPECT_EQ( error_of( "input A\ninput B\noutput Y=A\ngate g1 kind=CT_AND in=A,B out=A\n" ), netlist_errc::multiple_drivers );
}

TEST( Netlist, ArityMismatch )
{
  EXPECT_EQ( error_of( "input A\ninput B\noutput Y=y\ngate g kind=CT_AND in=A,B,A out=y\n" ), netlist_errc::arity_mismatch );
  EXPECT_EQ( error_of( "input A\ninput B\noutput Y=y\ngate g kind=POLY_AND_OR in=A,B out=y\n" ), netlist_errc::arity_mismatch );
}

TEST( Netlist, DuplicateGateName )
{
  EXPECT_EQ( error_of( "input A\ninput B\noutput Y=y\ngate g kind=CT_AND in=A,B out=y\ngate g kind=CT_OR in=A,B out=z\n" ),
             netlist_errc::duplicate_name );
}

TEST( Netlist, SyntaxErrors )
{
  EXPECT_EQ( error_of( "inputs A\n" ), netlist_errc::syntax );
  EXPECT_EQ( error_of( "input A\ngate g kind=CT_FOO in=A out=y\n" ), netlist_errc::syntax );
  EXPECT_EQ( error_of( "input A\nblock b {\ngate g kind=INV in=A out=y\n" ), netlist_errc::syntax );
  EXPECT_EQ( error_of( "input A\n}\n" ), netlist_errc::syntax );
}

TEST( Netlist, DiagnosticsCarryLineNumbers )
{
  try
  {
    parse_netlist( "input A\n\noutput Y=y\ngate g kind=CT_AND in=A,Q out=y\n" );
    FAIL();
  }
  catch ( netlist_error const& e )
  {
    ASSERT_FALSE( e.diagnostics().empty() );
    EXPECT_EQ( e.diagnostics().front().line, 4u );
  }
}

TEST( Netlist, RoundTripSingleGate )
{
  auto const n = parse_netlist( poly_and_or );
  EXPECT_EQ( parse_netlist( serialize( n ) ), n );
}

TEST( Netlist, RoundTripGenericAndBlocks )
{
  constexpr std::string_view text = R"(input A
input B
input C
ctrl K
output Y=y
output Z=z
block first {
  gate g1 kind=GENERIC_CT in=A,B,C ctrl=K out=y weights=3,0,2 theta=4 ctrl_weight=1 stages=1
}
gate g2 kind=CT_OR in=y,C out=z
)";
  auto const n = parse_netlist( text );
  EXPECT_EQ( n.gates[0].block, "first" );
  EXPECT_EQ( n.gates[0].spec.weights.data, ( std::vector<uint32_t>{ 3, 0, 2 } ) );
  EXPECT_EQ( serialize( n ), text );
  EXPECT_EQ( parse_netlist( serialize( n ) ), n );
}

TEST( Netlist, RoundTripMsa )
{
  auto const n = build_msa();
  auto const text = serialize( n );
  EXPECT_EQ( parse_netlist( text ), n );
  EXPECT_EQ( serialize( parse_netlist( text ) ), text );
}

TEST( Netlist, TopoOrderChain )
{
  auto const n = parse_netlist( "input A\noutput Y=c\ngate g3 kind=INV in=b out=c\ngate g2 kind=INV in=a out=b\ngate g1 kind=INV in=A out=a\n" );
  EXPECT_EQ( topo_order( n ), ( std::vector<std::size_t>{ 2, 1, 0 } ) );
}

TEST( Netlist, TopoOrderDiamond )
{
  auto const n = parse_netlist( "input A\ninput B\noutput Y=d\n"
                                "gate gd kind=CT_AND in=b,c out=d\n"
                                "gate gb kind=CT_NAND in=a,B out=b\n"
                                "gate gc kind=CT_NOR in=a,B out=c\n"
                                "gate ga kind=INV in=A out=a\n" );
  auto const order = topo_order( n );
  ASSERT_EQ( order.size(), 4u );
  auto pos = [&]( std::size_t g ) { return std::find( order.begin(), order.end(), g ) - order.begin(); };
  EXPECT_LT( pos( 3 ), pos( 1 ) );
  EXPECT_LT( pos( 3 ), pos( 2 ) );
  EXPECT_LT( pos( 1 ), pos( 0 ) );
  EXPECT_LT( pos( 2 ), pos( 0 ) );
  /* ties broken by declaration order */
  EXPECT_EQ( order, ( std::vector<std::size_t>{ 3, 1, 2, 0 } ) );
}

TEST( Netlist, TransistorTotal )
{
  auto const n = parse_netlist( "input A\ninput B\nctrl Ct\noutput Y=z\n"
                                "gate g1 kind=POLY_AND_OR in=A,B ctrl=Ct out=y\n"
                                "gate g2 kind=INV in=y out=z\n" );
  EXPECT_EQ( total_transistors( n ), 7u );
}

TEST( Netlist, CensusByBlock )
{
  auto const c = census( build_msa() );
  EXPECT_EQ( c.total.transistors, total_transistors( build_msa() ) );
  uint32_t sum = 0u;
  for ( auto const& [name, e] : c.blocks )
    sum += e.transistors;
  EXPECT_EQ( sum, c.total.transistors );
  EXPECT_EQ( c.total.gates, c.total.crosstalk_gates + c.total.inverters );
}

TEST( Netlist, FaninCone )
{
  auto const n = parse_netlist( "input A\ninput B\ninput C\noutput Y=y\noutput Z=z\n"
                                "gate g1 kind=CT_AND in=A,B out=y\n"
                                "gate g2 kind=INV in=C out=z\n" );
  EXPECT_EQ( fanin_cone( n, { "y" } ), ( std::set<std::string>{ "A", "B", "y" } ) );
  EXPECT_EQ( output_cone( n ), ( std::set<std::string>{ "A", "B", "C", "y", "z" } ) );
}

TEST( Netlist, IdentifierRules )
{
  EXPECT_TRUE( is_identifier( "a_1" ) );
  EXPECT_TRUE( is_identifier( "_x" ) );
  EXPECT_FALSE( is_identifier( "1a" ) );
  EXPECT_FALSE( is_identifier( "" ) );
  EXPECT_FALSE( is_identifier( "a-b" ) );
}
