int g;

/*@ ghost
  @ /@ lemma
  @  @ assigns g;
  @  @ ensures \true;
  @  @/
  @ void touch(void)
  @ {
  @ }
  @*/
