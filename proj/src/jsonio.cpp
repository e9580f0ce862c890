// placeholder until the cli io lands
