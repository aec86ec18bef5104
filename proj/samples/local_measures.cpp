// Measures of Majority_6 at the all-zero point, plus the global maxima.
#include <iostream>

#include <andlift/measures.hpp>
#include <andlift/zoo.hpp>

int main()
{
  using namespace andlift;
  auto const f = generate( { family_kind::majority, 6 } );

  auto const at0 = local_measures( f, 0 );
  std::cout << "Majority_6 at 0: MBS " << at0.mbs << ", FMBS " << to_fraction_string( at0.fmbs ) << ", HSC " << at0.hsc << '\n';
  std::cout << "  disjoint flipping blocks:";
  for ( auto b : at0.packing.blocks )
    std::cout << ' ' << format_set( b );
  std::cout << "\n  hitting set: " << format_set( at0.hitting.elements ) << '\n';

  auto const g = global_measures( f );
  std::cout << "global: MBS " << g.mbs << " at " << format_set( g.argmax.mbs ) << ", FMBS " << to_fraction_string( g.fmbs ) << '\n';
}
