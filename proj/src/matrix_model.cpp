// placeholder, replaced by the oracle implementation
