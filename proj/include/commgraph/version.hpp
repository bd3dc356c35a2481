#ifndef COMMGRAPH_VERSION_HPP
#define COMMGRAPH_VERSION_HPP

namespace commgraph {
inline constexpr const char* kToolName = "commgraph";
inline constexpr const char* kToolVersion = "0.1.0";
} // namespace commgraph

#endif
