#ifndef QCB_VERSION_HPP
#define QCB_VERSION_HPP

namespace qcb {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qcb

#endif  // QCB_VERSION_HPP
