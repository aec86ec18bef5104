// Dichotomy on the 13 lines of the projective plane over F_3, for growing m.
#include <iostream>

#include <andlift/zoo.hpp>

int main()
{
  using namespace andlift;
  auto const lines = projective_plane_lines( 3 );
  for ( std::size_t m : { 2u, 4u, 8u, 13u } )
  {
    auto const r = dichotomy( lines, m );
    std::cout << "m=" << m << ": ";
    if ( r.disjoint_branch() )
      std::cout << r.chosen.size() << " sets disjoint outside T=" << format_set( r.t ) << '\n';
    else
      std::cout << "hitting set " << format_set( r.hitting->cover.elements ) << " (bound " << r.hitting_bound << ")\n";
  }
}
