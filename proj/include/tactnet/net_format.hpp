#pragma once

#include <string>
#include <string_view>

#include "tactnet/net.hpp"

namespace tactnet {

/// A parsed net description: structure plus initial marking.
struct NetDocument {
  NetStructure net;
  Marking initial;
};

/// Line-based net format, '#' comments:
///   place <name> [init <tokens>]
///   trans <name> [pri <value>]
///   arc <src> -> <dst> [* <weight>]
///   inhib <place> -o <trans>
///   pri <trans> > <trans>          (relational priority, converted to ranks)
/// Numeric `pri` attributes and relational `pri` lines cannot be mixed.
NetDocument parse_net(std::string_view text);

/// Canonical text form; parse_net(print_net(d)) reproduces d exactly.
std::string print_net(const NetStructure& net, const Marking& initial);

}  // namespace tactnet
