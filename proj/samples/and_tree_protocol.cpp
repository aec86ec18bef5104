// Zero-tree -> AND-tree -> protocol for a function read from a file.
#include <iostream>

#include <andlift/comm.hpp>
#include <andlift/function_io.hpp>

int main( int argc, char** argv )
{
  using namespace andlift;
  if ( argc != 2 )
  {
    std::cerr << "usage: and_tree_protocol <function file>\n";
    return 1;
  }
  auto const f = read_function_file( argv[1] );

  auto const zdt = build_zero_dt( f );
  auto const adt = zero_dt_to_adt( zdt );
  std::cout << "spar " << f.sparsity() << ", zero-depth " << zdt.zero_depth() << ", AND-tree depth " << adt.depth() << '\n';
  std::cout << format_tree( adt ) << '\n';

  auto const check = check_protocol( adt, f );
  std::cout << "protocol: " << check.wrong << " wrong of " << check.pairs << ", max cost " << check.max_cost << '\n';
  std::cout << "rank " << comm_rank( f ) << '\n';

  auto const full = full_mask( f.num_vars() );
  std::cout << "transcript on (all ones, all ones): " << simulate_protocol( adt, full, full ).format() << '\n';
}
