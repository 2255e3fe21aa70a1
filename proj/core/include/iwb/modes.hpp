#pragma once

namespace iwb {

enum class InterpolationMode { Craig, Lyndon };
enum class QuantifierDirection { Forall, Exists };

}  // namespace iwb
