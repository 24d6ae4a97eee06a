namespace pfec { namespace { [[maybe_unused]] int placeholder_fe_space = 0; } }
