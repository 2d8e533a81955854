/** Minimal progress bar: a track, a fill, and a label. */

export class ProgressBar {
  readonly root: HTMLElement;
  private readonly fill: HTMLElement;
  private readonly label: HTMLElement;

  constructor(parent: HTMLElement) {
    this.root = document.createElement('div');
    this.root.className = 'progress';
    const track = document.createElement('div');
    track.className = 'progress-track';
    this.fill = document.createElement('div');
    this.fill.className = 'progress-fill';
    track.appendChild(this.fill);
    this.label = document.createElement('div');
    this.label.className = 'progress-label';
    this.root.appendChild(track);
    this.root.appendChild(this.label);
    parent.appendChild(this.root);
  }

  update(completed: number, total: number): void {
    const pct = total > 0 ? Math.round((100 * completed) / total) : 0;
    this.fill.style.width = `${pct}%`;
    this.label.textContent = `${completed} / ${total}`;
  }
}
